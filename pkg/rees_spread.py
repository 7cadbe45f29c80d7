"""
Rees Spread - Rees algebra presentations by elimination, fiber cones,
analytic spread and reduction numbers
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

from config_loader import get_config
from constants import NOT_A_REDUCTION, REES_TAG_VARIABLE, REES_VARIABLE_PREFIX
from error_handler import NotASubideal
from field_poly import PolynomialRing
from groebner import Ideal, krull_dimension
from ideal_algebra import QuotientRingSpec, eliminate, fresh_names
from structured_logger import get_logger

logger = get_logger()


@dataclass(frozen=True)
class ReesPresentation:
    """
    R[It] as S[T_1..T_s]/Q, where Q is the kernel of T_i -> g_i t over R
    """
    quotient: QuotientRingSpec
    generators: Tuple
    ring: PolynomialRing
    t_names: Tuple[str, ...]
    relations: Ideal

    def substitution_check(self) -> bool:
        """Every relation vanishes in R[t] after T_i -> g_i t"""
        S = self.quotient.ambient
        tag = fresh_names(S, [REES_TAG_VARIABLE])[0]
        St = PolynomialRing(S.field, S.variables + (tag,), S.order)
        t = St.gen(tag)
        images = [St.gen(v) for v in S.variables]
        images += [g.embed(St) * t for g in self.generators]
        defining = Ideal(St, [g.embed(St) for g in self.quotient.defining.generators])
        return all(defining.contains(f.substitute(images)) for f in self.relations.generators)

    def fiber_ideal(self) -> Ideal:
        """Q + (all variables of S): its variety is the fiber cone's"""
        S = self.quotient.ambient
        return self.relations + Ideal(self.ring, [self.ring.gen(v) for v in S.variables])


def rees_presentation(R: QuotientRingSpec, I: Ideal) -> ReesPresentation:
    """
    Q = ({T_i - g_i t} + P) ∩ S[T], eliminating t
    """
    S = R.ambient
    gens = [g for g in I.generators if not R.is_zero(g)]
    if not gens:
        raise ValueError("Rees algebra of the zero ideal")
    t_names = tuple(fresh_names(S, [f"{REES_VARIABLE_PREFIX}{k + 1}" for k in range(len(gens))]))
    tag = fresh_names(PolynomialRing(S.field, S.variables + t_names), [REES_TAG_VARIABLE])[0]
    big = PolynomialRing(S.field, S.variables + t_names + (tag,), S.order)
    t = big.gen(tag)
    equations = [big.gen(name) - g.embed(big) * t for name, g in zip(t_names, gens)]
    equations += [g.embed(big) for g in R.defining.generators]
    eliminated = eliminate(Ideal(big, equations), [tag])

    ST = PolynomialRing(S.field, S.variables + t_names, S.order)
    positions = [ST.index(v) if v != tag else None for v in big.variables]
    relations = Ideal(ST, [f.change_ring(ST, positions) for f in eliminated.generators])
    logger.debug("rees_presentation_computed", generators=len(gens), relations=len(relations.generators))
    return ReesPresentation(R, tuple(gens), ST, t_names, relations)


@dataclass(frozen=True)
class ReductionVerdict:
    number: Optional[int]
    n_max: int

    @property
    def label(self) -> str:
        if self.number is None:
            return f"{NOT_A_REDUCTION}({self.n_max})"
        return str(self.number)


def reduction_number_check(J: Ideal, I: Ideal, n_max: int,
                           quotient: Optional[QuotientRingSpec] = None) -> ReductionVerdict:
    """
    Least N <= n_max with J I^N = I^(N+1)

    Raises:
        NotASubideal: J is not contained in I
    """
    R = quotient or QuotientRingSpec(I.ring)
    if not R.lift(J).is_subideal_of(R.lift(I)):
        raise NotASubideal(f"{J} is not contained in {I}")
    power = Ideal.unit(I.ring)
    for N in range(n_max + 1):
        nxt = power * I
        if R.equal(J * power, nxt):
            return ReductionVerdict(N, n_max)
        power = nxt
    return ReductionVerdict(None, n_max)


@dataclass(frozen=True)
class SpreadReport:
    spread: int
    fiber_relations: int
    reduction: Optional[ReductionVerdict] = None


def analytic_spread(R: QuotientRingSpec, I: Ideal, J: Optional[Ideal] = None,
                    n_max: Optional[int] = None) -> SpreadReport:
    """
    Krull dimension of the fiber cone at the ideal of all variables,
    with the reduction number of I over J when J is given
    """
    presentation = rees_presentation(R, I)
    fiber = presentation.fiber_ideal()
    dimension = krull_dimension(fiber)
    fiber_gens = [f for f in fiber.groebner().basis
                  if not any(f.ring.variables[k] in R.ambient.variables for k in f.support())]
    reduction = None
    if J is not None:
        bound = n_max if n_max is not None else get_config().search_bound('nmax')
        reduction = reduction_number_check(J, I, bound, quotient=R)
    return SpreadReport(dimension, len(fiber_gens), reduction)


def spreads_of_powers(R: QuotientRingSpec, I: Ideal, exponents: List[int]) -> List[int]:
    return [analytic_spread(R, I ** n).spread for n in exponents]
