"""
Koszul LCB - Koszul cocomplexes on powers of a sequence, the comparison maps
between them, annihilation exponents and bounded local cohomology bounds
"""
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from constants import UNKNOWN_ABOVE, Certification
from error_handler import InvalidRange, NotACocycle
from field_poly import Polynomial, PolynomialRing
from ideal_algebra import QuotientRingSpec
from resolutions import ChainComplex, FreeMap, ModuleBasis, PresentedModule, subquotient, syzygies
from structured_logger import get_logger

logger = get_logger()


@lru_cache(maxsize=None)
def _subsets(d: int, i: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(d), i))


@lru_cache(maxsize=None)
def _subset_index(d: int, i: int) -> Dict[Tuple[int, ...], int]:
    return {T: b for b, T in enumerate(_subsets(d, i))}


@dataclass(frozen=True)
class Unstabilized:
    """No stabilization witnessed within k_max"""
    k_max: int

    def __str__(self) -> str:
        return f"UNSTABILIZED({self.k_max})"


Epsilon = Union[int, Unstabilized]


class KoszulSystem:
    """
    A sequence x_1..x_d and a module M. The cochain module K^i is
    M^C(d,i), one block per i-subset T of {0..d-1} in lexicographic order.
    """

    def __init__(self, ring: PolynomialRing, sequence: Sequence[Polynomial], module: PresentedModule,
                 quotient: Optional[QuotientRingSpec] = None):
        if not sequence:
            raise ValueError("Koszul sequence must be non-empty")
        self.ring = ring
        self.sequence = tuple(ring.coerce(x) for x in sequence)
        self.module = module
        self.quotient = quotient
        for x in self.sequence:
            if not x or (quotient is not None and quotient.is_zero(x)):
                raise ValueError(f"sequence element {x} is zero in the working ring")

    @property
    def d(self) -> int:
        return len(self.sequence)

    @property
    def generators(self) -> int:
        return self.module.rank

    def cochain_rank(self, i: int) -> int:
        if not 0 <= i <= self.d:
            return 0
        return comb(self.d, i) * self.generators

    def powered(self, j: int) -> 'KoszulSystem':
        """The system on x_1^j..x_d^j"""
        return KoszulSystem(self.ring, [x ** j for x in self.sequence], self.module, self.quotient)

    def tail(self) -> 'KoszulSystem':
        """The system on x_2..x_d"""
        return KoszulSystem(self.ring, self.sequence[1:], self.module, self.quotient)

    def relations(self, i: int) -> FreeMap:
        """Presentation relations of K^i: one copy of the module relations per block"""
        A = self.module.presentation
        g = self.generators
        blocks = comb(self.d, i) if 0 <= i <= self.d else 0
        columns = []
        for b in range(blocks):
            for col in A.columns():
                vec = [self.ring.zero()] * (blocks * g)
                vec[b * g:(b + 1) * g] = col
                columns.append(tuple(vec))
        return FreeMap.from_columns(self.ring, blocks * g, columns)

    def differential(self, i: int, j: int) -> FreeMap:
        """δ^i: K^i -> K^(i+1) built from x_t^j with sign (-1)^#{s in T : s < t}"""
        d, g = self.d, self.generators
        rows, cols = self.cochain_rank(i + 1), self.cochain_rank(i)
        entries = [[self.ring.zero()] * cols for _ in range(rows)]
        target = _subset_index(d, i + 1)
        powers = [x ** j for x in self.sequence]
        for b, T in enumerate(_subsets(d, i)):
            for t in range(d):
                if t in T:
                    continue
                sign = -1 if sum(1 for s in T if s < t) % 2 else 1
                b2 = target[tuple(sorted(T + (t,)))]
                entry = powers[t].scale(sign)
                for r in range(g):
                    entries[b2 * g + r][b * g + r] = entry
        return FreeMap(self.ring, rows, cols, entries)

    def __repr__(self) -> str:
        return f"KoszulSystem(({', '.join(str(x) for x in self.sequence)}), rank={self.generators})"


def koszul_cocomplex(sys: KoszulSystem, j: int) -> ChainComplex:
    """K^•(x^j; M) on free covers of the cochain modules"""
    if j < 1:
        raise InvalidRange("Koszul exponent must be at least 1")
    maps = tuple(sys.differential(i, j) for i in range(sys.d))
    ranks = tuple(sys.cochain_rank(i) for i in range(sys.d + 1))
    return ChainComplex(sys.ring, maps, ranks, cohomological=True)


def alpha_chain_map(sys: KoszulSystem, i: int, j1: int, j2: int) -> FreeMap:
    """
    Comparison map K^i(x^j1; M) -> K^i(x^j2; M): block T is multiplication
    by (prod of x_t, t in T)^(j2 - j1)

    Raises:
        InvalidRange: j1 > j2 or j1 < 1
    """
    if j1 < 1 or j1 > j2:
        raise InvalidRange(f"comparison map needs 1 <= j1 <= j2, got {j1}, {j2}")
    g = sys.generators
    k = j2 - j1
    diagonal = []
    for T in _subsets(sys.d, i):
        factor = sys.ring.one()
        for t in T:
            factor = factor * sys.sequence[t]
        factor = factor ** k
        diagonal.extend([factor] * g)
    return FreeMap.diagonal(sys.ring, diagonal)


def _cocycles(sys: KoszulSystem, i: int, j: int) -> FreeMap:
    """Generators of the cocycles of K^i modulo the relations of K^(i+1)"""
    n = sys.cochain_rank(i)
    if i == sys.d:
        return FreeMap.identity(sys.ring, n)
    kernel = syzygies(sys.differential(i, j).hstack(sys.relations(i + 1)))
    return FreeMap.from_columns(sys.ring, n, [col[:n] for col in kernel.columns() if any(col[:n])])


def _boundaries(sys: KoszulSystem, i: int, j: int) -> FreeMap:
    """Coboundaries plus relations of K^i"""
    relations = sys.relations(i)
    if i == 0:
        return relations
    return sys.differential(i - 1, j).hstack(relations)


def koszul_cohomology(sys: KoszulSystem, i: int, j: int) -> PresentedModule:
    """H^i(x^j; M) as a pruned subquotient with its generator lift"""
    if not 0 <= i <= sys.d:
        raise InvalidRange(f"Koszul degree {i} outside 0..{sys.d}")
    if j < 1:
        raise InvalidRange("Koszul exponent must be at least 1")
    return subquotient(_cocycles(sys, i, j), _boundaries(sys, i, j))


@dataclass(frozen=True)
class CohomologyClass:
    """A class of H^i(x^j; M) given by a cochain representative"""
    degree: int
    exponent: int
    representative: Tuple[Polynomial, ...]


def is_cocycle(sys: KoszulSystem, eta: CohomologyClass) -> bool:
    i, j = eta.degree, eta.exponent
    if len(eta.representative) != sys.cochain_rank(i):
        raise ValueError("representative length does not match the cochain rank")
    if i == sys.d:
        return True
    image = sys.differential(i, j).apply(eta.representative)
    return PresentedModule(sys.ring, sys.relations(i + 1)).contains(image)


def epsilon(sys: KoszulSystem, i: int, j: int, eta: CohomologyClass, k_max: int) -> Epsilon:
    """
    Least k <= k_max whose comparison map sends eta to zero in H^i(x^(j+k); M)

    Raises:
        NotACocycle: the representative is not closed
    """
    if eta.degree != i or eta.exponent != j:
        raise ValueError("class degree or exponent does not match the request")
    if not is_cocycle(sys, eta):
        raise NotACocycle(f"representative of degree {i} is not a cocycle")
    for k in range(k_max + 1):
        image = alpha_chain_map(sys, i, j, j + k).apply(eta.representative)
        if PresentedModule(sys.ring, _boundaries(sys, i, j + k)).contains(image):
            return k
    return Unstabilized(k_max)


def kernel_chain(sys: KoszulSystem, i: int, j: int, k_max: int) -> List[ModuleBasis]:
    """
    Bases of ker(H^i(x^j) -> H^i(x^(j+k))) for k = 0..k_max, as submodules
    of the free module on the cocycle generators. The chain is ascending.
    """
    Z = _cocycles(sys, i, j)
    g = Z.cols
    chain = []
    for k in range(k_max + 1):
        moved = alpha_chain_map(sys, i, j, j + k).compose(Z)
        kernel = syzygies(moved.hstack(_boundaries(sys, i, j + k)))
        chain.append(ModuleBasis(sys.ring, g, [col[:g] for col in kernel.columns()]))
    return chain


@dataclass(frozen=True)
class LcbRow:
    j: int
    stabilization_index: Optional[int]
    epsilon: Epsilon


@dataclass(frozen=True)
class LcbReport:
    """
    Bounded search for lcb_i. The bound is always a certified lower bound;
    certification says whether more is known.
    """
    degree: int
    j_max: int
    k_max: int
    rows: Tuple[LcbRow, ...] = field(default=())
    bound: int = 0
    certification: Certification = Certification.LOWER_BOUND

    @property
    def bound_label(self) -> str:
        if self.certification is Certification.UNSTABILIZED:
            return f"{UNKNOWN_ABOVE}({self.bound})"
        return str(self.bound)


def lcb_estimate(sys: KoszulSystem, i: int, j_max: int, k_max: int) -> LcbReport:
    """
    For each j <= j_max, the kernel chain of the comparison maps out of
    H^i(x^j; M) and the least k at which it stops growing. That index is
    also the annihilation exponent of the stabilized kernel, since the
    chain is ascending.
    """
    if j_max < 1 or k_max < 1:
        raise InvalidRange("search bounds must be at least 1")
    if not 0 <= i <= sys.d:
        raise InvalidRange(f"Koszul degree {i} outside 0..{sys.d}")
    rows = []
    for j in range(1, j_max + 1):
        chain = kernel_chain(sys, i, j, k_max)
        if chain[-2] != chain[-1]:
            rows.append(LcbRow(j, None, Unstabilized(k_max)))
            logger.debug("lcb_kernel_unstabilized", degree=i, j=j, k_max=k_max)
            continue
        k0 = next(k for k in range(k_max + 1) if chain[k] == chain[-1])
        rows.append(LcbRow(j, k0, k0))
        logger.debug("lcb_kernel_stabilized", degree=i, j=j, index=k0)

    values = [row.epsilon for row in rows if isinstance(row.epsilon, int)]
    bound = max(values, default=0)
    if len(values) < len(rows):
        certification = Certification.UNSTABILIZED
    elif j_max > 1 and values[-1] <= max(values[:-1]):
        certification = Certification.CERTIFIED_EQUAL
    else:
        certification = Certification.LOWER_BOUND
    return LcbReport(i, j_max, k_max, tuple(rows), bound, certification)
