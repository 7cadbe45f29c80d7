"""
Settings for the charkit engines and CLI

config.yaml is layered over built-in defaults; CHARKIT_* environment
variables override both.
"""
import copy
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from constants import DEFAULT_SEARCH_BOUNDS

DEFAULTS: Dict[str, Any] = {
    'engine': {
        'max_gb_steps': 0,
        'max_saturation_steps': 64,
        'max_resolution_length': 4,
    },
    'cache': {'enabled': True, 'max_size': 512},
    'search': dict(DEFAULT_SEARCH_BOUNDS),
    'output': {'format': 'csv'},
    'logging': {'level': 'WARNING'},
}


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _coerce(raw: str) -> Any:
    """Environment strings to bool, int or float where they parse as one"""
    lowered = raw.strip().lower()
    if lowered in ('true', 'false'):
        return lowered == 'true'
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw


class Config:
    """YAML settings with dot-path lookup"""

    def __init__(self, config_file: Optional[str] = None):
        """
        Args:
            config_file: YAML path. Defaults to $CHARKIT_CONFIG, then the
                config.yaml shipped next to this module.
        """
        if config_file is None:
            config_file = os.getenv('CHARKIT_CONFIG') or str(Path(__file__).with_name('config.yaml'))
        self.config_file = Path(config_file)
        self._config = self._read()

    def _read(self) -> Dict[str, Any]:
        if not self.config_file.is_file():
            return copy.deepcopy(DEFAULTS)
        try:
            loaded = yaml.safe_load(self.config_file.read_text(encoding='utf-8'))
        except (OSError, yaml.YAMLError):
            return copy.deepcopy(DEFAULTS)
        if not isinstance(loaded, Mapping):
            return copy.deepcopy(DEFAULTS)
        return _merge(DEFAULTS, loaded)

    def get(self, key_path: str, default: Any = None) -> Any:
        """Look up 'section.key'; missing keys give `default`"""
        node: Any = self._config
        for part in key_path.split('.'):
            if not isinstance(node, Mapping) or node.get(part) is None:
                return default
            node = node[part]
        return node

    def get_with_env(self, key_path: str, env_var: Optional[str] = None, default: Any = None) -> Any:
        """Like get(), but a non-empty `env_var` wins"""
        raw = os.getenv(env_var) if env_var else None
        if raw:
            return _coerce(raw)
        return self.get(key_path, default)

    @property
    def max_gb_steps(self) -> int:
        """S-pair reductions allowed per Buchberger run (0 = unlimited)"""
        return int(self.get_with_env('engine.max_gb_steps', 'CHARKIT_MAX_GB_STEPS', 0))

    @property
    def max_saturation_steps(self) -> int:
        return int(self.get_with_env('engine.max_saturation_steps', 'CHARKIT_MAX_SAT_STEPS', 64))

    @property
    def resolution_slack(self) -> int:
        return int(self.get('engine.max_resolution_length', 4))

    @property
    def cache_enabled(self) -> bool:
        return bool(self.get_with_env('cache.enabled', 'CHARKIT_CACHE', True))

    @property
    def cache_max_size(self) -> int:
        return int(self.get('cache.max_size', 512))

    @property
    def output_format(self) -> str:
        return str(self.get_with_env('output.format', 'CHARKIT_FORMAT', 'csv'))

    @property
    def log_level(self) -> str:
        return str(self.get_with_env('logging.level', 'CHARKIT_LOG_LEVEL', 'WARNING')).upper()

    def search_bound(self, name: str) -> int:
        """Default for one of the --emax/--tmax/--jmax/--kmax/--nmax flags"""
        return int(self.get(f'search.{name}', DEFAULT_SEARCH_BOUNDS[name]))


_config_instance: Optional[Config] = None


def get_config() -> Config:
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def reset_config(config: Optional[Config] = None) -> None:
    """Swap the process-wide Config (None forces a reload on next use)"""
    global _config_instance
    _config_instance = config
