"""
Ideal Algebra - Sums, products, intersections, colons, saturations,
eliminations, Frobenius bracket powers and symbolic powers
"""
from functools import cached_property, reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from config_loader import get_config
from constants import TAG_VARIABLE
from error_handler import DivisionByZero, InvalidFrobeniusPower, ResourceLimitExceeded, RingMismatch
from field_poly import MonomialOrder, Polynomial, PolynomialRing
from groebner import Ideal, Length, colength, krull_dimension
from structured_logger import get_logger

logger = get_logger()


def _check_same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def ideal_sum_product_power(op: str, I: Ideal, other: Union[Ideal, int]) -> Ideal:
    """
    Generator-level sum, product or power

    Args:
        op: 'sum', 'product' or 'power'
        I: Left ideal
        other: Right ideal, or the exponent for 'power'
    """
    if op == 'sum':
        return I + other
    if op == 'product':
        return I * other
    if op == 'power':
        return I ** other
    raise ValueError(f"unknown ideal operation {op!r}")


def fresh_names(ring: PolynomialRing, bases: Sequence[str]) -> List[str]:
    names: List[str] = []
    for base in bases:
        name = base
        while name in ring.variables or name in names:
            name += '_'
        names.append(name)
    return names


def _block_ring(ring: PolynomialRing, front: Sequence[str]) -> Tuple[PolynomialRing, List[int]]:
    """
    Ring with `front` variables first under an elimination order that
    eliminates them; returns the positions of the original variables.
    """
    rest = [v for v in ring.variables if v not in front]
    block = PolynomialRing(ring.field, tuple(front) + tuple(rest), MonomialOrder.elimination(len(front)))
    return block, [block.index(v) for v in ring.variables]


def _restrict(block: PolynomialRing, ring: PolynomialRing, basis: Iterable[Polynomial],
              eliminated: int) -> List[Polynomial]:
    """Basis elements free of the first `eliminated` variables, moved back into ring"""
    positions = [None] * eliminated + [ring.index(v) for v in block.variables[eliminated:]]
    kept = []
    for g in basis:
        if any(any(e[:eliminated]) for e, _ in g.terms):
            continue
        kept.append(g.change_ring(ring, positions))
    return kept


def eliminate(I: Ideal, variables: Iterable[str]) -> Ideal:
    """I intersected with the subring generated by the remaining variables"""
    ring = I.ring
    wanted = set(variables)
    names = [v for v in ring.variables if v in wanted]
    missing = wanted - set(ring.variables)
    if missing:
        raise KeyError(f"unknown variables {sorted(missing)} for {ring}")
    if not names:
        return I
    block, positions = _block_ring(ring, names)
    lifted = Ideal(block, [g.change_ring(block, positions) for g in I.generators])
    return Ideal(ring, _restrict(block, ring, lifted.groebner().basis, len(names)))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J with the tag variable t eliminated"""
    _check_same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    tag_name = fresh_names(ring, [TAG_VARIABLE])[0]
    block, _ = _block_ring(
        PolynomialRing(ring.field, (tag_name,) + ring.variables, ring.order), [tag_name])
    positions = [block.index(v) for v in ring.variables]
    t = block.gen(tag_name)
    gens = [t * g.change_ring(block, positions) for g in I.generators]
    gens += [(1 - t) * h.change_ring(block, positions) for h in J.generators]
    return Ideal(ring, _restrict(block, ring, Ideal(block, gens).groebner().basis, 1))


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise ValueError("empty intersection")
    return reduce(intersect, ideals)


def colon(I: Ideal, by: Union[Polynomial, Ideal]) -> Ideal:
    """
    (I : f) = {g | g*f ∈ I}, or the intersection of the element colons for an ideal

    Raises:
        DivisionByZero: f is zero, or J is the zero ideal
    """
    if isinstance(by, Ideal):
        _check_same_ring(I, by)
        if by.is_zero():
            raise DivisionByZero("colon by the zero ideal")
        return intersect_all([colon(I, g) for g in by.generators])
    f = I.ring.coerce(by)
    if not f:
        raise DivisionByZero("colon by the zero element")
    if f.is_unit() or I.is_zero():
        return I
    common = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [g.exact_quotient(f) for g in common.generators])


def saturate(I: Ideal, by: Union[Polynomial, Ideal]) -> Tuple[Ideal, int]:
    """
    Iterate colons until two consecutive reduced bases agree

    Returns:
        (I : by^∞) and the least k with (I : by^k) = (I : by^(k+1))

    Raises:
        ResourceLimitExceeded: more than engine.max_saturation_steps colons
    """
    if isinstance(by, Ideal):
        if by.is_zero():
            raise DivisionByZero("saturation by the zero ideal")
    elif not I.ring.coerce(by):
        raise DivisionByZero("saturation by the zero element")
    cap = get_config().max_saturation_steps
    current = I
    k = 0
    while True:
        nxt = colon(current, by)
        if nxt.equals(current):
            logger.debug("saturation_stabilized", exponent=k)
            return current, k
        current = nxt
        k += 1
        if k > cap:
            raise ResourceLimitExceeded(f"saturation did not stabilize within {cap} colons")


def _saturate_element(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f^∞) from one elimination: (I + (1 - y*f)) ∩ S"""
    ring = I.ring
    if f.is_unit():
        return I
    name = fresh_names(ring, ['sat_y'])[0]
    block, _ = _block_ring(
        PolynomialRing(ring.field, (name,) + ring.variables, ring.order), [name])
    positions = [block.index(v) for v in ring.variables]
    y = block.gen(name)
    gens = [g.change_ring(block, positions) for g in I.generators]
    gens.append(1 - y * f.change_ring(block, positions))
    return Ideal(ring, _restrict(block, ring, Ideal(block, gens).groebner().basis, 1))


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^∞) as the intersection of the saturations by each generator of J"""
    _check_same_ring(I, J)
    if J.is_zero():
        raise DivisionByZero("saturation by the zero ideal")
    return intersect_all([_saturate_element(I, g) for g in J.generators])


def is_power_of(q: int, p: int) -> bool:
    if not isinstance(q, int) or q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def bracket_power(I: Ideal, q: int) -> Ideal:
    """
    Frobenius power I^[q], generated by the q-th powers of the generators

    Raises:
        InvalidFrobeniusPower: q is not a power of the characteristic
    """
    if not is_power_of(q, I.ring.p):
        raise InvalidFrobeniusPower(f"{q} is not a power of {I.ring.p}")
    return Ideal(I.ring, [g.frobenius(q) for g in I.generators])


class QuotientRingSpec:
    """
    R = S/P with S a polynomial ring. Ideals of R are handled through
    their preimages in S, which always contain P.
    """

    def __init__(self, ambient: PolynomialRing, defining: Optional[Ideal] = None, name: str = ''):
        if defining is not None and defining.ring != ambient:
            raise RingMismatch(f"{defining.ring} vs {ambient}")
        self.ambient = ambient
        self.defining = defining if defining is not None else Ideal.zero(ambient)
        self.name = name

    @property
    def p(self) -> int:
        return self.ambient.p

    @cached_property
    def dimension(self) -> int:
        return krull_dimension(self.defining)

    @property
    def height(self) -> int:
        return self.ambient.nvars - self.dimension

    def ideal(self, generators: Iterable[Union[Polynomial, int]]) -> Ideal:
        """Preimage in S of the R-ideal generated by the images of generators"""
        return Ideal(self.ambient, list(generators) + list(self.defining.generators))

    def lift(self, I: Ideal) -> Ideal:
        if I.ring != self.ambient:
            raise RingMismatch(f"{I.ring} vs {self.ambient}")
        return I + self.defining

    def maximal_ideal(self) -> Ideal:
        return self.ideal(self.ambient.gens())

    def contains(self, I: Ideal, f: Union[Polynomial, int]) -> bool:
        return self.lift(I).contains(f)

    def is_zero(self, f: Polynomial) -> bool:
        return self.defining.contains(f)

    def equal(self, I: Ideal, J: Ideal) -> bool:
        return self.lift(I).equals(self.lift(J))

    def length(self, I: Ideal) -> Length:
        """λ(R/I)"""
        return colength(self.lift(I))

    def __repr__(self) -> str:
        label = f"{self.name} = " if self.name else ''
        return f"QuotientRingSpec({label}{self.ambient} / {self.defining})"


def symbolic_power(I: Ideal, n: int, sat: Ideal, quotient: Optional[QuotientRingSpec] = None) -> Ideal:
    """
    I^(n) as (I^n : sat^∞), computed on preimages when a quotient is given
    """
    _check_same_ring(I, sat)
    if n < 0:
        raise ValueError("symbolic power exponent must be non-negative")
    if n == 0:
        return Ideal.unit(I.ring)
    base = I ** n
    if quotient is not None:
        base = quotient.lift(base)
    result = saturation(base, sat)
    logger.debug("symbolic_power_computed", exponent=n, generators=len(result.generators))
    return result
