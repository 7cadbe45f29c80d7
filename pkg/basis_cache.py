"""
Basis Cache - In-memory LRU cache for reduced Groebner bases
Keys are (ring, generator tuple); values are immutable GroebnerBasis objects
"""
import threading
from typing import Any, Dict, Hashable, Optional

from cachetools import LRUCache


class BasisCache:
    """Thread-safe LRU cache with hit statistics"""

    def __init__(self, max_size: int = 512):
        """
        Initialize cache

        Args:
            max_size: Maximum number of bases kept in memory
        """
        self.max_size = max_size
        self._cache: LRUCache = LRUCache(maxsize=max_size)
        self._lock = threading.RLock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Get value from cache

        Args:
            key: Cache key

        Returns:
            Cached value or None
        """
        with self._lock:
            value = self._cache.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def set(self, key: Hashable, value: Any) -> None:
        """Store value, evicting the least recently used entry when full"""
        with self._lock:
            self._cache[key] = value

    def clear(self) -> None:
        """Clear all cached bases and counters"""
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics"""
        with self._lock:
            return {
                'size': len(self._cache),
                'max_size': self.max_size,
                'hits': self.hits,
                'misses': self.misses,
            }


# Global cache instance
_cache_instance: Optional[BasisCache] = None


def get_basis_cache() -> BasisCache:
    """Get global basis cache"""
    global _cache_instance
    if _cache_instance is None:
        from config_loader import get_config
        _cache_instance = BasisCache(get_config().cache_max_size)
    return _cache_instance
