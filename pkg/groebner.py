"""
Groebner - Buchberger engine over term vectors
Scalar ideals use component 0 only; module bases reuse the same engine
with a position-over-term extension of the ring order
"""
import heapq
import itertools
import operator
import threading
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from basis_cache import get_basis_cache
from config_loader import get_config
from error_handler import EmptyVariety, ResourceLimitExceeded, RingMismatch
from field_poly import (
    Monomial, MonomialOrder, Polynomial, PolynomialRing, monomial_divides, monomial_lcm,
)
from structured_logger import get_logger

# (component, exponents)
Term = Tuple[int, Monomial]
Vector = Dict[Term, int]


class Unbounded(Enum):
    """Sentinel for an infinite length"""
    INFINITE = 'INFINITE'

    def __str__(self) -> str:
        return self.value


INFINITE = Unbounded.INFINITE
Length = Union[int, Unbounded]


class TermOrder:
    """Position-over-term order: lower component index wins, then the monomial order"""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self._mono_key = order.key

    def key(self, term: Term) -> tuple:
        return (-term[0], self._mono_key(term[1]))

    def lead(self, vec: Vector) -> Term:
        return max(vec, key=self.key)


class ReducerSet:
    """Monic reducers indexed by the component of their lead term"""

    def __init__(self, order: TermOrder):
        self.order = order
        self._by_component: Dict[int, List[Tuple[Monomial, Vector]]] = {}

    def add(self, lead: Term, vec: Vector) -> None:
        self._by_component.setdefault(lead[0], []).append((lead[1], vec))

    def find(self, term: Term) -> Optional[Tuple[Monomial, Vector]]:
        for lead_mono, vec in self._by_component.get(term[0], ()):
            if monomial_divides(lead_mono, term[1]):
                return lead_mono, vec
        return None

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_component.values())


def reduce_vector(vec: Vector, reducers: ReducerSet, p: int) -> Vector:
    """
    Full reduction: the result has no term divisible by a reducer lead.
    Reducers must be monic.
    """
    f = dict(vec)
    rem: Vector = {}
    key = reducers.order.key
    add, sub = operator.add, operator.sub
    while f:
        lt = max(f, key=key)
        c = f.pop(lt)
        hit = reducers.find(lt)
        if hit is None:
            rem[lt] = c
            continue
        lead_mono, g = hit
        shift = tuple(map(sub, lt[1], lead_mono))
        for (comp, mono), gc in g.items():
            t = (comp, tuple(map(add, mono, shift)))
            if t == lt:
                continue
            v = (f.get(t, 0) - c * gc) % p
            if v:
                f[t] = v
            else:
                f.pop(t, None)
    return rem


def _make_monic(vec: Vector, lead: Term, p: int) -> Vector:
    c = vec[lead]
    if c == 1:
        return vec
    inv = pow(c, p - 2, p)
    return {t: (a * inv) % p for t, a in vec.items()}


def _shifted(vec: Vector, shift: Monomial) -> Vector:
    add = operator.add
    return {(comp, tuple(map(add, mono, shift))): c for (comp, mono), c in vec.items()}


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger_vectors(vectors: Iterable[Vector], p: int, order: TermOrder,
                       product_criterion: bool = True, max_steps: int = 0) -> List[Vector]:
    """
    Reduced Groebner basis of the submodule spanned by vectors.

    Normal selection strategy (lowest lcm degree, then oldest pair) with the
    Gebauer-Moeller update. The product criterion is only sound for ideals,
    so module callers switch it off.

    Args:
        vectors: Generators as {(component, exponents): coefficient}
        p: Characteristic
        order: Term order
        product_criterion: Apply Buchberger's coprime-lead criterion
        max_steps: Cap on S-pair reductions, 0 for none

    Returns:
        Monic reduced basis sorted by descending lead term

    Raises:
        ResourceLimitExceeded: more than max_steps S-pairs were reduced
    """
    key = order.key
    polys: List[Tuple[Term, Vector]] = []
    active: List[int] = []
    pairs: Dict[Tuple[int, int], Term] = {}
    heap: List[Tuple[int, int, Tuple[int, int]]] = []
    counter = itertools.count()
    reducers = ReducerSet(order)

    def lcm_with(i: int, k: int) -> Optional[Term]:
        (ci, mi), (ck, mk) = polys[i][0], polys[k][0]
        if ci != ck:
            return None
        return (ci, monomial_lcm(mi, mk))

    def update(k: int) -> None:
        comp_k, mono_k = polys[k][0]
        candidates = [i for i in active if polys[i][0][0] == comp_k]
        lcms = {i: monomial_lcm(polys[i][0][1], mono_k) for i in candidates}

        def skip_by_product(i: int) -> bool:
            return product_criterion and _coprime(polys[i][0][1], mono_k)

        remaining = list(candidates)
        kept: List[int] = []
        while remaining:
            i = remaining.pop(0)
            if skip_by_product(i):
                kept.append(i)
                continue
            dominated = any(monomial_divides(lcms[j], lcms[i]) for j in remaining) or \
                any(monomial_divides(lcms[j], lcms[i]) for j in kept)
            if not dominated:
                kept.append(i)
        new_pairs = [i for i in kept if not skip_by_product(i)]

        for (a, b), lcm_ab in list(pairs.items()):
            if lcm_ab[0] != comp_k or not monomial_divides(mono_k, lcm_ab[1]):
                continue
            if lcm_with(a, k) != lcm_ab and lcm_with(b, k) != lcm_ab:
                del pairs[(a, b)]

        for i in new_pairs:
            term = (comp_k, lcms[i])
            pairs[(i, k)] = term
            heapq.heappush(heap, (sum(lcms[i]), next(counter), (i, k)))

        active[:] = [g for g in active
                     if not (polys[g][0][0] == comp_k and monomial_divides(mono_k, polys[g][0][1]))]
        active.append(k)

    def insert(vec: Vector) -> None:
        lead = order.lead(vec)
        vec = _make_monic(vec, lead, p)
        k = len(polys)
        polys.append((lead, vec))
        reducers.add(lead, vec)
        update(k)

    for vec in sorted((v for v in vectors if v), key=lambda v: key(order.lead(v))):
        h = reduce_vector(vec, reducers, p)
        if h:
            insert(h)

    steps = 0
    while heap:
        _, _, pair = heapq.heappop(heap)
        lcm_term = pairs.pop(pair, None)
        if lcm_term is None:
            continue
        steps += 1
        if max_steps and steps > max_steps:
            raise ResourceLimitExceeded(f"Groebner basis exceeded {max_steps} S-pair reductions")
        i, j = pair
        (_, mi), fi = polys[i]
        (_, mj), fj = polys[j]
        s = _shifted(fi, tuple(map(operator.sub, lcm_term[1], mi)))
        for t, c in _shifted(fj, tuple(map(operator.sub, lcm_term[1], mj))).items():
            v = (s.get(t, 0) - c) % p
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        h = reduce_vector(s, reducers, p)
        if h:
            insert(h)

    # interreduce the minimal basis
    minimal = [polys[i] for i in active]
    result: List[Tuple[Term, Vector]] = []
    for idx, (lead, vec) in enumerate(minimal):
        others = ReducerSet(order)
        for jdx, (lead_j, vec_j) in enumerate(minimal):
            if jdx != idx:
                others.add(lead_j, vec_j)
        tail = {t: c for t, c in vec.items() if t != lead}
        reduced = reduce_vector(tail, others, p)
        reduced[lead] = 1
        result.append((lead, reduced))
    result.sort(key=lambda lv: key(lv[0]), reverse=True)

    get_logger().debug("groebner_basis_computed", basis_size=len(result),
                       spairs_reduced=steps, elements_added=len(polys))
    return [vec for _, vec in result]


def poly_to_vector(f: Polynomial, component: int = 0) -> Vector:
    return {(component, e): c for e, c in f.terms}


def vector_to_poly(ring: PolynomialRing, vec: Vector) -> Polynomial:
    return ring.from_dict({mono: c for (_, mono), c in vec.items()})


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis of an ideal"""
    ring: PolynomialRing
    basis: Tuple[Polynomial, ...]
    generators: Tuple[Polynomial, ...] = field(default=(), compare=False)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @cached_property
    def _reducers(self) -> ReducerSet:
        reducers = ReducerSet(TermOrder(self.ring.order))
        for g in self.basis:
            reducers.add((0, g.lm), poly_to_vector(g))
        return reducers

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm for g in self.basis]

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        if not f:
            return f
        return vector_to_poly(self.ring, reduce_vector(poly_to_vector(f), self._reducers, self.ring.p))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_unit()

    def is_zero(self) -> bool:
        return not self.basis

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def _compute_basis(ring: PolynomialRing, generators: Tuple[Polynomial, ...]) -> GroebnerBasis:
    vectors = buchberger_vectors(
        (poly_to_vector(g) for g in generators),
        ring.p,
        TermOrder(ring.order),
        product_criterion=True,
        max_steps=get_config().max_gb_steps,
    )
    return GroebnerBasis(ring, tuple(vector_to_poly(ring, v) for v in vectors), generators)


class Ideal:
    """
    Ideal of a polynomial ring given by generators.

    Equality is equality of ideals (reduced bases), not of generator lists.
    """

    def __init__(self, ring: PolynomialRing, generators: Iterable[Union[Polynomial, int]] = ()):
        seen = set()
        gens = []
        for g in generators:
            g = ring.coerce(g)
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb: Optional[GroebnerBasis] = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolynomialRing) -> 'Ideal':
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolynomialRing) -> 'Ideal':
        return cls(ring)

    @classmethod
    def maximal(cls, ring: PolynomialRing) -> 'Ideal':
        """The irrelevant ideal generated by all variables"""
        return cls(ring, ring.gens())

    def groebner(self) -> GroebnerBasis:
        """Reduced Groebner basis, computed once per ideal"""
        if self._gb is not None:
            return self._gb
        with self._lock:
            if self._gb is None:
                config = get_config()
                cache_key = (self.ring, self.generators)
                cache = get_basis_cache() if config.cache_enabled else None
                gb = cache.get(cache_key) if cache is not None else None
                if gb is None:
                    gb = _compute_basis(self.ring, self.generators)
                    if cache is not None:
                        cache.set(cache_key, gb)
                self._gb = gb
        return self._gb

    def _same_ring(self, other: 'Ideal') -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def contains(self, f: Union[Polynomial, int]) -> bool:
        return self.groebner().contains(self.ring.coerce(f))

    __contains__ = contains

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.groebner().reduce(f)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_unit() for g in self.generators):
            return True
        return bool(self.generators) and self.groebner().is_unit()

    def is_subideal_of(self, other: 'Ideal') -> bool:
        self._same_ring(other)
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: 'Ideal') -> bool:
        self._same_ring(other)
        return self.groebner().basis == other.groebner().basis

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner().basis == other.groebner().basis

    def __hash__(self) -> int:
        return hash((self.ring, self.groebner().basis))

    def __add__(self, other: 'Ideal') -> 'Ideal':
        self._same_ring(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: 'Ideal') -> 'Ideal':
        self._same_ring(other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __pow__(self, n: int) -> 'Ideal':
        if not isinstance(n, int) or n < 0:
            raise ValueError("ideal exponent must be a non-negative integer")
        if n == 0:
            return Ideal.unit(self.ring)
        products = []
        for combo in itertools.combinations_with_replacement(self.generators, n):
            f = self.ring.one()
            for g in combo:
                f = f * g
            products.append(f)
        return Ideal(self.ring, products)

    def scale_by(self, f: Polynomial) -> 'Ideal':
        """The ideal f*I"""
        return Ideal(self.ring, [f * g for g in self.generators])

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: Optional[PolynomialRing] = None) -> 'Ideal':
        return Ideal(ring or self.ring, [fn(g) for g in self.generators])

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"

    __str__ = __repr__


def groebner_basis(I: Ideal) -> GroebnerBasis:
    return I.groebner()


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    return I.contains(f)


def count_standard_monomials(leads: Sequence[Monomial], nvars: int) -> Length:
    """
    Number of monomials outside the monomial ideal generated by leads

    Returns INFINITE when some variable has no pure power among the leads.
    """
    leads = list(leads)
    if any(not any(m) for m in leads):
        return 0
    if nvars == 0:
        return 1
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in leads if m[i] and not any(a for k, a in enumerate(m) if k != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    last = nvars - 1
    total = 0
    for prefix in itertools.product(*(range(b) for b in bounds[:last])):
        cap = bounds[last]
        for m in leads:
            if m[last] < cap and all(m[k] <= prefix[k] for k in range(last)):
                cap = m[last]
        total += cap
    return total


def colength(I: Ideal) -> Length:
    """dim_F(S/I) as a count of standard monomials, or INFINITE"""
    gb = I.groebner()
    return count_standard_monomials(gb.leading_monomials(), I.ring.nvars)


def independent_set_size(leads: Sequence[Monomial], nvars: int) -> int:
    """Largest set of variables containing the support of no lead"""
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in leads]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal) -> int:
    """
    Dimension of V(I)

    Raises:
        EmptyVariety: I is the unit ideal
    """
    gb = I.groebner()
    if gb.is_unit():
        raise EmptyVariety("the unit ideal has empty variety")
    return independent_set_size(gb.leading_monomials(), I.ring.nvars)
