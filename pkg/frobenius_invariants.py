"""
Frobenius Invariants - Tight closure membership, Frobenius degeneracy chains,
Hilbert-Kunz and F-signature tables, and instance checkers for the colon,
Ext-annihilation and Ext-isomorphism identities of canonical-ideal data
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from constants import IN_CLOSURE_UP_TO, NOT_IN_CLOSURE, Certification
from error_handler import (
    HypothesisFailed, InvalidRange, InvalidSuitableData, InvalidTestElement, NotASubideal,
    NotPrimary, ResourceLimitExceeded,
)
from field_poly import Polynomial
from groebner import INFINITE, Ideal
from ideal_algebra import QuotientRingSpec, bracket_power, colon, symbolic_power
from resolutions import FreeMap, PresentedModule, ext_module, subquotient
from structured_logger import get_logger

logger = get_logger()


def _lift_length(R: QuotientRingSpec, I: Ideal) -> int:
    length = R.length(I)
    if length is INFINITE:
        raise NotPrimary(f"{I} is not primary to the maximal ideal")
    return length


# -- tight closure ---------------------------------------------------------

@dataclass(frozen=True)
class TightClosureVerdict:
    in_closure: bool
    e: int

    @property
    def label(self) -> str:
        return f"{IN_CLOSURE_UP_TO if self.in_closure else NOT_IN_CLOSURE}({self.e})"


def tc_member(r: Polynomial, I: Ideal, c: Polynomial, e_max: int,
              quotient: Optional[QuotientRingSpec] = None) -> TightClosureVerdict:
    """
    Checks c * r^q ∈ I^[q] for q = p^e, e = 1..e_max. The first failure is
    a refutation relative to c; passing every e is only bounded evidence.

    Raises:
        InvalidTestElement: c is zero in the working ring
    """
    R = quotient or QuotientRingSpec(I.ring)
    if not c or R.is_zero(c):
        raise InvalidTestElement(f"test element {c} is zero in the ring")
    if e_max < 1:
        raise InvalidRange("e_max must be at least 1")
    p = I.ring.p
    for e in range(1, e_max + 1):
        q = p ** e
        target = R.lift(bracket_power(I, q))
        if not target.contains(c * r.frobenius(q)):
            logger.debug("tight_closure_refuted", e=e)
            return TightClosureVerdict(False, e)
    return TightClosureVerdict(True, e_max)


# -- suitable parameter data -------------------------------------------------

@dataclass
class SuitableParams:
    """
    Canonical-ideal data for a quotient ring R = S/P: J1 with multiple m,
    parameters x_1..x_d, optional multipliers a2, a3, socle element u,
    anti-canonical ideal K1 and the saturating ideal for symbolic powers.
    A unit J1 stands for the Gorenstein convention and becomes (x_1).
    """
    R: QuotientRingSpec
    J1: Ideal
    m: int
    x: Tuple[Polynomial, ...]
    a2: Optional[Polynomial] = None
    a3: Optional[Polynomial] = None
    u: Optional[Polynomial] = None
    K1: Optional[Ideal] = None
    sat: Optional[Ideal] = None
    name: str = ''

    def __post_init__(self):
        self.x = tuple(self.x)
        if not self.x:
            raise InvalidSuitableData("at least one parameter is required")
        if self.m < 1:
            raise InvalidSuitableData("multiple m must be positive")
        if self.J1.is_unit() or self.R.lift(self.J1).is_unit():
            self.J1 = Ideal(self.R.ambient, [self.x[0]])
        if self.sat is None:
            self.sat = Ideal.maximal(self.R.ambient)

    @property
    def ring(self):
        return self.R.ambient

    @property
    def d(self) -> int:
        return len(self.x)

    def parameter_ideal(self, t: int = 1) -> Ideal:
        """I_t = (x_1^(t-1) J1, x_2^t, ..., x_d^t), without P"""
        x1 = self.x[0]
        gens = [x1 ** (t - 1) * g for g in self.J1.generators]
        gens += [xi ** t for xi in self.x[1:]]
        return Ideal(self.ring, gens)

    def socle_element(self, t: int = 1) -> Polynomial:
        """u_t = u (x_1...x_d)^(t-1)"""
        if self.u is None:
            raise InvalidSuitableData("socle element u is required")
        product = self.ring.one()
        for xi in self.x:
            product = product * xi
        return self.u * product ** (t - 1)

    def anticanonical(self) -> Ideal:
        """K1, or ((x_1) : J1) in R when not supplied"""
        if self.K1 is not None:
            return self.R.lift(self.K1)
        return colon(self.R.ideal([self.x[0]]), self.R.lift(self.J1))

    def validate(self) -> 'SuitableParams':
        """
        Checks x_1 ∈ J1, that (J1, x_2..x_d) has finite colength, that the
        parameter count is dim R, and that u is outside I_1.

        Raises:
            InvalidSuitableData: any check fails
        """
        R = self.R
        if self.d != R.dimension:
            raise InvalidSuitableData(f"{self.d} parameters given for a ring of dimension {R.dimension}")
        if not R.contains(self.J1, self.x[0]):
            raise InvalidSuitableData("x_1 is not in J1")
        if R.length(self.parameter_ideal(1)) is INFINITE:
            raise InvalidSuitableData("(J1, x_2, ..., x_d) is not primary to the maximal ideal")
        if self.u is not None and R.contains(self.parameter_ideal(1), self.u):
            raise InvalidSuitableData("u lies in (J1, x_2, ..., x_d)")
        return self

    def check_multipliers(self) -> None:
        """
        Raises:
            HypothesisFailed: x_2 J1 ⊄ a2 R or x_3 J1^(m) ⊄ a3 R
        """
        R = self.R
        if self.a2 is not None and self.d >= 2:
            if not R.contains(self.J1, self.a2):
                raise HypothesisFailed("a2 is not in J1")
            principal = R.ideal([self.a2])
            if not all(principal.contains(self.x[1] * g) for g in self.J1.generators):
                raise HypothesisFailed("x_2 J1 is not contained in a2 R")
        if self.a3 is not None and self.d >= 3:
            symbolic = symbolic_power(self.J1, self.m, self.sat, quotient=R)
            if not symbolic.contains(self.a3):
                raise HypothesisFailed("a3 is not in J1^(m)")
            principal = R.ideal([self.a3])
            if not all(principal.contains(self.x[2] * g) for g in symbolic.generators):
                raise HypothesisFailed("x_3 J1^(m) is not contained in a3 R")


# -- finitistic tight closure ----------------------------------------------------

@dataclass(frozen=True)
class FinitisticRow:
    t: int
    vanishes: bool
    verdict: TightClosureVerdict


@dataclass(frozen=True)
class FinitisticReport:
    """
    The class of r in lim R/I_t (maps: multiplication by x_1...x_d),
    followed through the stages t = 1..t_max
    """
    rows: Tuple[FinitisticRow, ...]

    @property
    def first_stage(self) -> Optional[int]:
        """Least t whose stage passed; closure membership persists from there on"""
        return next((row.t for row in self.rows if row.verdict.in_closure), None)

    @property
    def in_closure(self) -> bool:
        return self.first_stage is not None

    @property
    def certification(self) -> Certification:
        last = self.rows[-1]
        if not last.verdict.in_closure:
            return Certification.REFUTED
        return Certification.EXACT if last.vanishes else Certification.BOUNDED


def finitistic_tc_check(sp: SuitableParams, r: Polynomial, c: Polynomial,
                        t_max: int, e_max: int) -> FinitisticReport:
    """
    Whether the class of r mod I_1 lies in the finitistic tight closure of
    zero in the direct limit of R/I_t. At stage t the class is
    r (x_1...x_d)^(t-1) mod I_t and membership is tested with tc_member.
    A refutation at every t <= t_max is relative to c and the bounds.

    Raises:
        InvalidRange: t_max < 1 or e_max < 1
        InvalidTestElement: c is zero in R
    """
    if t_max < 1 or e_max < 1:
        raise InvalidRange("t_max and e_max must be at least 1")
    R = sp.R
    if not c or R.is_zero(c):
        raise InvalidTestElement(f"test element {c} is zero in the ring")
    product = sp.ring.one()
    for xi in sp.x:
        product = product * xi
    rows = []
    image = r
    for t in range(1, t_max + 1):
        stage = sp.parameter_ideal(t)
        vanishes = R.contains(stage, image)
        verdict = TightClosureVerdict(True, e_max) if vanishes else tc_member(image, stage, c, e_max, quotient=R)
        rows.append(FinitisticRow(t, vanishes, verdict))
        if verdict.in_closure:
            break
        image = image * product
    logger.debug("finitistic_closure_checked", stages=len(rows), in_closure=rows[-1].verdict.in_closure)
    return FinitisticReport(tuple(rows))


# -- degeneracy chains ---------------------------------------------------------

@dataclass(frozen=True)
class DegeneracyChain:
    """(I_t^[q] : u_t^q) for t = 1.. until two consecutive ideals agree"""
    e: int
    ideals: Tuple[Ideal, ...]
    stabilization_index: Optional[int]

    @property
    def stabilized(self) -> Ideal:
        if self.stabilization_index is None:
            return self.ideals[-1]
        return self.ideals[self.stabilization_index - 1]

    @property
    def certification(self) -> Certification:
        return Certification.EXACT if self.stabilization_index is not None else Certification.UNSTABILIZED


def degeneracy_chain(sp: SuitableParams, e: int, t_max: int) -> DegeneracyChain:
    """
    Raises:
        InvalidSuitableData: a step is the unit ideal or fails to contain the previous one
    """
    if t_max < 2:
        raise InvalidRange("t_max must be at least 2")
    R = sp.R
    q = R.p ** e
    ideals: List[Ideal] = []
    stable_at: Optional[int] = None
    for t in range(1, t_max + 1):
        bracket = R.lift(bracket_power(sp.parameter_ideal(t), q))
        current = colon(bracket, sp.socle_element(t).frobenius(q))
        if current.is_unit():
            raise InvalidSuitableData(f"u_{t} lies in I_{t}; u must be a socle representative")
        if ideals:
            previous = ideals[-1]
            if not previous.is_subideal_of(current):
                raise InvalidSuitableData(f"degeneracy chain is not ascending at t = {t}")
            if previous.equals(current):
                stable_at = t - 1
                ideals.append(current)
                break
        ideals.append(current)
    logger.debug("degeneracy_chain_computed", e=e, steps=len(ideals), stable_at=stable_at)
    return DegeneracyChain(e, tuple(ideals), stable_at)


# -- Frobenius tables ------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusRow:
    e: int
    length: int
    ratio: Fraction
    s_e: Optional[Fraction] = None
    stabilization_index: Optional[int] = None


@dataclass(frozen=True)
class FrobeniusReport:
    dimension: int
    rows: Tuple[FrobeniusRow, ...] = field(default=())
    certification: Certification = Certification.EXACT


def hk_estimate(R: QuotientRingSpec, I: Ideal, e_max: int) -> FrobeniusReport:
    """
    λ(R/I^[q]) and λ(R/I^[q]) / q^d for e = 1..e_max

    Raises:
        NotPrimary: I has infinite colength in R
    """
    if e_max < 1:
        raise InvalidRange("e_max must be at least 1")
    _lift_length(R, I)
    d = R.dimension
    rows = []
    for e in range(1, e_max + 1):
        q = R.p ** e
        length = _lift_length(R, bracket_power(I, q))
        rows.append(FrobeniusRow(e, length, Fraction(length, q ** d)))
        logger.debug("hilbert_kunz_row", e=e, length=length)
    return FrobeniusReport(d, tuple(rows))


def fsig_estimate(sp: SuitableParams, e_max: int, t_max: int) -> FrobeniusReport:
    """s_e = λ(R/I_e) / q^d from the stabilized degeneracy chains"""
    if e_max < 1:
        raise InvalidRange("e_max must be at least 1")
    R = sp.R
    d = R.dimension
    rows = []
    certification = Certification.EXACT
    for e in range(1, e_max + 1):
        q = R.p ** e
        chain = degeneracy_chain(sp, e, t_max)
        if chain.stabilization_index is None:
            certification = Certification.UNSTABILIZED
        length = _lift_length(R, chain.stabilized)
        s_e = Fraction(length, q ** d)
        rows.append(FrobeniusRow(e, length, s_e, s_e, chain.stabilization_index))
    return FrobeniusReport(d, tuple(rows), certification)


@dataclass(frozen=True)
class WatanabeYoshidaRow:
    e: int
    chain_length: int
    bracket_length: int
    with_socle_length: int

    @property
    def holds(self) -> bool:
        return self.chain_length == self.bracket_length - self.with_socle_length


def watanabe_yoshida_check(sp: SuitableParams, e_max: int, t_max: int,
                           t0: int = 1) -> List[WatanabeYoshidaRow]:
    """
    Per e: λ(R/I_e) against λ(R/I^[q]) - λ(R/(I, u)^[q]) with I = I_t0, u = u_t0
    """
    R = sp.R
    I = sp.parameter_ideal(t0)
    with_socle = I + Ideal(sp.ring, [sp.socle_element(t0)])
    rows = []
    for e in range(1, e_max + 1):
        q = R.p ** e
        chain = degeneracy_chain(sp, e, t_max)
        rows.append(WatanabeYoshidaRow(
            e,
            _lift_length(R, chain.stabilized),
            _lift_length(R, bracket_power(I, q)),
            _lift_length(R, bracket_power(with_socle, q)),
        ))
    return rows


@dataclass(frozen=True)
class RelativeHKRow:
    e: int
    s_e: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.s_e <= self.bound


def relative_hk_check(R: QuotientRingSpec, I: Ideal, J: Ideal, e_max: int,
                      s_values: Sequence[Fraction]) -> List[RelativeHKRow]:
    """
    s_e against (λ(R/I^[q]) - λ(R/J^[q])) / (q^d λ(J/I)) for I ⊊ J

    Raises:
        NotASubideal: I is not contained in J
        HypothesisFailed: I = J
    """
    if not R.lift(I).is_subideal_of(R.lift(J)):
        raise NotASubideal(f"{I} is not contained in {J}")
    gap = _lift_length(R, I) - _lift_length(R, J)
    if gap == 0:
        raise HypothesisFailed("the ideals are equal, so λ(J/I) = 0")
    d = R.dimension
    rows = []
    for e, s_e in zip(range(1, e_max + 1), s_values):
        q = R.p ** e
        diff = _lift_length(R, bracket_power(I, q)) - _lift_length(R, bracket_power(J, q))
        rows.append(RelativeHKRow(e, Fraction(s_e), Fraction(diff, q ** d * gap)))
    return rows


# -- colon, Ext-annihilation and Ext-isomorphism checkers --------------------------

@dataclass(frozen=True)
class ColonLemmaResult:
    part1: bool
    part2: Optional[bool]


def _colon_side(sp: SuitableParams, base: Ideal, powers: Sequence[int], q: int, divisor: Polynomial) -> Ideal:
    gens = list(base.generators)
    gens += [xi ** (n * q) for xi, n in zip(sp.x[1:], powers)]
    return colon(sp.R.ideal(gens), divisor)


def colon_lemma_check(sp: SuitableParams, e: int, N: Sequence[int], a_d: Optional[Polynomial] = None,
                      n: int = 1) -> ColonLemmaResult:
    """
    Part 1: with x_2 J ⊆ a2 R, the colons of (J^(q), x_i^(N_i q)) and
    (J^[q], x_i^(N_i q)) by x_2^((N_2-1)q) agree with the colon of
    (J^[q], x_2^(2q), x_i^(N_i q)) by x_2^q.
    Part 2, when a_d is given with x_d^n J^(m) ⊆ a_d R ⊆ J^(m): the colon of
    (J^(q), x_i^(N_i q)) by x_d^((N_d-1)q) lies in the colon of
    (J^(q), ..., x_d^(2q)) by x_1^m x_d^q.

    Args:
        N: Exponents N_2..N_d

    Raises:
        HypothesisFailed: a multiplier hypothesis does not hold
    """
    N = list(N)
    if len(N) != sp.d - 1:
        raise InvalidRange(f"expected {sp.d - 1} exponents N_2..N_d, got {len(N)}")
    if sp.d < 2:
        raise InvalidRange("the colon checks need at least two parameters")
    if sp.a2 is None:
        raise HypothesisFailed("part 1 needs a2")
    if N[0] < 2:
        raise InvalidRange("N_2 must be at least 2")
    R = sp.R
    q = R.p ** e
    J = sp.J1
    if not R.contains(J, sp.a2):
        raise HypothesisFailed("a2 is not in J")
    principal = R.ideal([sp.a2])
    if not all(principal.contains(sp.x[1] * g) for g in J.generators):
        raise HypothesisFailed("x_2 J is not contained in a2 R")

    frob = bracket_power(J, q)
    symb = symbolic_power(J, q, sp.sat, quotient=R)
    x2 = sp.x[1]
    first = _colon_side(sp, symb, N, q, x2 ** ((N[0] - 1) * q))
    second = _colon_side(sp, frob, N, q, x2 ** ((N[0] - 1) * q))
    third = _colon_side(sp, frob, [2] + N[1:], q, x2 ** q)
    part1 = first.equals(second) and second.equals(third)

    part2 = None
    if a_d is not None:
        if N[-1] < 2:
            raise InvalidRange("N_d must be at least 2")
        xd = sp.x[-1]
        symb_m = symbolic_power(J, sp.m, sp.sat, quotient=R)
        if not symb_m.contains(a_d):
            raise HypothesisFailed("a_d is not in J^(m)")
        principal_d = R.ideal([a_d])
        if not all(principal_d.contains(xd ** n * g) for g in symb_m.generators):
            raise HypothesisFailed("x_d^n J^(m) is not contained in a_d R")
        left = _colon_side(sp, symb, N, q, xd ** ((N[-1] - 1) * q))
        right = _colon_side(sp, symb, N[:-1] + [2], q, sp.x[0] ** sp.m * xd ** q)
        part2 = left.is_subideal_of(right)
    logger.debug("colon_lemma_checked", e=e, part1=part1, part2=part2)
    return ColonLemmaResult(part1, part2)


def _first_ext(sp: SuitableParams, i: int) -> PresentedModule:
    """Ext^(h+1)_S(R/J1^(mi+1), S)"""
    R = sp.R
    power = R.lift(sp.J1 ** (sp.m * i + 1))
    return ext_module(PresentedModule.cyclic(power), R.height + 1)


def ext_annihilation_check(sp: SuitableParams, i: int, j_range: Iterable[int]) -> Dict[int, bool]:
    """
    For 2 <= j <= d-2 in j_range: whether x_2^i..x_(j+2)^i all annihilate
    Ext^(h+j)_S(Ext^(h+1)_S(R/J1^(mi+1), S), S)

    Raises:
        ResourceLimitExceeded: a resolution outgrew its cap; partial_rows holds the finished j
    """
    if i < 1:
        raise InvalidRange("i must be at least 1")
    js = sorted(j for j in set(j_range) if 2 <= j <= sp.d - 2)
    table: Dict[int, bool] = {}
    if not js:
        return table
    h = sp.R.height
    try:
        inner = _first_ext(sp, i)
        for j in js:
            outer = ext_module(inner, h + j)
            table[j] = all(outer.annihilates(xi ** i) for xi in sp.x[1:j + 2])
    except ResourceLimitExceeded as exc:
        raise ResourceLimitExceeded(
            str(exc), partial_rows=[{'j': j, 'annihilated': v} for j, v in table.items()]
        ) from exc
    return table


@dataclass(frozen=True)
class ExtIsoResult:
    ext_hilbert: Tuple[int, ...]
    quotient_hilbert: Tuple[int, ...]
    annihilators_agree: bool

    @property
    def agrees(self) -> bool:
        return self.ext_hilbert == self.quotient_hilbert and self.annihilators_agree

    def __bool__(self) -> bool:
        return self.agrees


def ext_iso_hilbert_check(sp: SuitableParams, i: int, degree_bound: int) -> ExtIsoResult:
    """
    Compares Ext^(h+1)_S(R/J1^(mi+1), S) with x_1 K1^(mi) / x_1^(mi+1) J1
    through λ(M/m^k M) for k <= degree_bound and through annihilators.

    Returns:
        The two Hilbert-Samuel rows and the annihilator comparison; the
        verdict of the check is `.agrees`, true iff both rows and both
        annihilators coincide
    """
    if i < 0 or degree_bound < 1:
        raise InvalidRange("need i >= 0 and degree_bound >= 1")
    R = sp.R
    ring = sp.ring
    x1 = sp.x[0]
    ext = _first_ext(sp, i)

    K1 = sp.anticanonical()
    mi = sp.m * i
    numerator = symbolic_power(K1, mi, sp.sat, quotient=R) if mi else Ideal.unit(ring)
    Z = FreeMap(ring, 1, len(numerator.generators), [[x1 * g for g in numerator.generators]])
    denominator = R.lift(sp.J1.scale_by(x1 ** (mi + 1)))
    B = FreeMap(ring, 1, len(denominator.generators), [list(denominator.generators)])
    target = subquotient(Z, B)

    ext_hilbert = tuple(ext.hilbert_samuel_function(degree_bound))
    target_hilbert = tuple(target.hilbert_samuel_function(degree_bound))
    annihilators = ext.annihilator().equals(target.annihilator())
    logger.debug("ext_iso_checked", i=i, ext_hilbert=ext_hilbert, target_hilbert=target_hilbert)
    return ExtIsoResult(ext_hilbert, target_hilbert, annihilators)
