"""
Tests for tight closure, degeneracy chains, Frobenius tables and the canonical-ideal checkers
"""
from fractions import Fraction

import pytest

from conftest import graded_colength
from constants import Certification
from error_handler import (
    HypothesisFailed, InvalidRange, InvalidSuitableData, InvalidTestElement, NotASubideal, NotPrimary,
)
from field_poly import polynomial_ring
from groebner import Ideal
from ideal_algebra import QuotientRingSpec, bracket_power
from frobenius_invariants import (
    SuitableParams, colon_lemma_check, degeneracy_chain, ext_annihilation_check, ext_iso_hilbert_check,
    finitistic_tc_check, fsig_estimate, hk_estimate, relative_hk_check, tc_member, watanabe_yoshida_check,
)


@pytest.fixture
def plane():
    S = polynomial_ring(5, 'x,y')
    return QuotientRingSpec(S, name='S')


def gorenstein_params(quadric):
    S = quadric.ambient
    x, y, z = S.gens()
    return SuitableParams(quadric, Ideal.unit(S), 1, (x, y), u=z)


def test_tight_closure_on_cubic_cone(cubic_cone) -> None:
    S = cubic_cone.ambient
    x, y, z = S.gens()
    verdict = tc_member(z ** 2, Ideal(S, [x, y]), x ** 2, 1, quotient=cubic_cone)
    assert verdict.in_closure
    assert verdict.label == 'IN_CLOSURE_UP_TO(1)'


@pytest.mark.slow
def test_tight_closure_on_cubic_cone_second_power(cubic_cone) -> None:
    S = cubic_cone.ambient
    x, y, z = S.gens()
    assert tc_member(z ** 2, Ideal(S, [x, y]), x ** 2, 2, quotient=cubic_cone).in_closure


def test_tight_closure_refuted_in_polynomial_ring(plane) -> None:
    S = plane.ambient
    x, y = S.gens()
    verdict = tc_member(x, Ideal(S, [x ** 2, y]), S.one(), 3)
    assert not verdict.in_closure
    assert verdict.e == 1
    assert verdict.label == 'NOT_IN_CLOSURE(1)'


def test_tight_closure_rejects_zero_test_element(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    with pytest.raises(InvalidTestElement):
        tc_member(z, Ideal(S, [x, y]), x * y - z ** 2, 1, quotient=quadric)
    with pytest.raises(InvalidRange):
        tc_member(z, Ideal(S, [x, y]), S.one(), 0, quotient=quadric)


def test_hilbert_kunz_of_quadric(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    report = hk_estimate(quadric, Ideal(S, [x, y]), 2)
    assert [row.length for row in report.rows] == [18, 162]
    assert all(row.ratio == 2 for row in report.rows)
    assert report.dimension == 2
    assert report.certification is Certification.EXACT
    report = hk_estimate(quadric, Ideal.maximal(S), 2)
    assert [row.length for row in report.rows] == [13, 121]
    assert report.rows[0].ratio == Fraction(13, 9)


@pytest.mark.parametrize('e', [1, 2])
def test_hilbert_kunz_agrees_with_graded_count(quadric, e) -> None:
    S = quadric.ambient
    q = 3 ** e
    bracket = bracket_power(Ideal.maximal(S), q)
    generators = list(bracket.generators) + list(quadric.defining.generators)
    expected = graded_colength(generators, 3, 3)
    assert hk_estimate(quadric, Ideal.maximal(S), e).rows[-1].length == expected


def test_hilbert_kunz_needs_primary_ideal(quadric) -> None:
    S = quadric.ambient
    with pytest.raises(NotPrimary):
        hk_estimate(quadric, Ideal(S, [S.gen('x')]), 1)


def test_params_validation(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    sp = gorenstein_params(quadric).validate()
    # the unit ideal stands for (x_1)
    assert sp.J1 == Ideal(S, [x])
    assert sp.parameter_ideal(2) == Ideal(S, [x ** 2, y ** 2])
    assert sp.socle_element(2) == z * x * y
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [x]), 1, (x,)).validate()
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [y]), 1, (x, y)).validate()
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [x]), 1, (x, x)).validate()
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [x]), 1, (x, y), u=x).validate()
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [x]), 0, (x, y))
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [x]), 1, (x, y)).socle_element()
    with pytest.raises(InvalidSuitableData):
        SuitableParams(quadric, Ideal(S, [x]), 1, ())


def test_multiplier_hypotheses(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    SuitableParams(quadric, Ideal(S, [x]), 1, (x, y), a2=x).check_multipliers()
    with pytest.raises(HypothesisFailed):
        SuitableParams(quadric, Ideal(S, [x]), 1, (x, y), a2=y).check_multipliers()


def test_degeneracy_chain_of_quadric(quadric) -> None:
    chain = degeneracy_chain(gorenstein_params(quadric), 1, 4)
    assert chain.stabilization_index is not None
    assert chain.certification is Certification.EXACT
    assert quadric.length(chain.stabilized) == 5
    for smaller, larger in zip(chain.ideals, chain.ideals[1:]):
        assert smaller.is_subideal_of(larger)
    with pytest.raises(InvalidRange):
        degeneracy_chain(gorenstein_params(quadric), 1, 1)


def test_f_signature_of_quadric_first_step(quadric) -> None:
    report = fsig_estimate(gorenstein_params(quadric), 1, 4)
    row = report.rows[0]
    assert row.length == 5
    assert row.s_e == Fraction(5, 9)
    assert report.certification is Certification.EXACT


@pytest.mark.slow
def test_f_signature_of_quadric_second_step(quadric) -> None:
    report = fsig_estimate(gorenstein_params(quadric), 2, 4)
    assert [row.length for row in report.rows] == [5, 41]
    assert report.rows[1].s_e == Fraction(41, 81)


def test_f_signature_of_regular_ring_is_one(plane) -> None:
    S = plane.ambient
    x, y = S.gens()
    sp = SuitableParams(plane, Ideal.unit(S), 1, (x, y), u=S.one()).validate()
    report = fsig_estimate(sp, 2, 3)
    assert [row.s_e for row in report.rows] == [1, 1]
    assert report.rows[0].length == 25
    assert report.rows[0].stabilization_index == 1


def test_chain_length_matches_bracket_difference(quadric) -> None:
    rows = watanabe_yoshida_check(gorenstein_params(quadric), 1, 4)
    assert rows[0].chain_length == 5
    assert rows[0].bracket_length == 18
    assert rows[0].with_socle_length == 13
    assert rows[0].holds


def test_relative_hilbert_kunz_bound(plane) -> None:
    S = plane.ambient
    x, y = S.gens()
    I, J = Ideal(S, [x ** 2, y]), Ideal(S, [x, y])
    rows = relative_hk_check(plane, I, J, 1, [Fraction(1)])
    assert rows[0].bound == 1
    assert rows[0].holds
    with pytest.raises(NotASubideal):
        relative_hk_check(plane, J, I, 1, [1])
    with pytest.raises(HypothesisFailed):
        relative_hk_check(plane, J, J, 1, [1])


def test_colon_lemma_on_quadric(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    sp = SuitableParams(quadric, Ideal(S, [x]), 1, (x, y), a2=x)
    result = colon_lemma_check(sp, 1, [2])
    assert result.part1
    assert result.part2 is None
    with pytest.raises(InvalidRange):
        colon_lemma_check(sp, 1, [2, 2])
    with pytest.raises(InvalidRange):
        colon_lemma_check(sp, 1, [1])
    with pytest.raises(HypothesisFailed):
        colon_lemma_check(gorenstein_params(quadric), 1, [2])


def test_ext_annihilation_is_vacuous_below_dimension_four(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    sp = SuitableParams(quadric, Ideal(S, [x]), 1, (x, y))
    assert ext_annihilation_check(sp, 1, range(0, 5)) == {}
    with pytest.raises(InvalidRange):
        ext_annihilation_check(sp, 0, [2])


@pytest.mark.slow
def test_ext_isomorphism_on_quadric(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    sp = SuitableParams(quadric, Ideal(S, [x]), 1, (x, y))
    result = ext_iso_hilbert_check(sp, 1, 3)
    assert result.ext_hilbert == result.quotient_hilbert
    assert result.annihilators_agree
    assert result.agrees
    assert bool(result)


@pytest.mark.parametrize('p', [2, 3, 5])
def test_kunz_baseline_for_polynomial_ring(p) -> None:
    R = QuotientRingSpec(polynomial_ring(p, 'x,y'))
    report = hk_estimate(R, Ideal.maximal(R.ambient), 3)
    assert [row.length for row in report.rows] == [p ** 2, p ** 4, p ** 6]
    assert all(row.ratio == 1 for row in report.rows)


@pytest.mark.slow
def test_hilbert_kunz_ratio_of_quadric_approaches_three_halves(quadric) -> None:
    row = hk_estimate(quadric, Ideal.maximal(quadric.ambient), 3).rows[-1]
    assert row.length == 1093
    assert abs(row.ratio - Fraction(3, 2)) < Fraction(1, 27)


def test_degeneracy_ideal_contains_frobenius_power_of_maximal_ideal(quadric, cubic_cone) -> None:
    sp = gorenstein_params(quadric)
    stabilized = degeneracy_chain(sp, 1, 4).stabilized
    assert bracket_power(Ideal.maximal(quadric.ambient), 3).is_subideal_of(stabilized)
    S = cubic_cone.ambient
    x, y, z = S.gens()
    # z^2 spans the socle of the cubic cone modulo (x, y)
    cone = SuitableParams(cubic_cone, Ideal.unit(S), 1, (x, y), u=z ** 2).validate()
    stabilized = degeneracy_chain(cone, 1, 2).stabilized
    assert bracket_power(Ideal.maximal(S), 7).is_subideal_of(stabilized)


@pytest.mark.slow
def test_degeneracy_ideals_grow_under_frobenius(quadric) -> None:
    sp = gorenstein_params(quadric)
    first = degeneracy_chain(sp, 1, 4).stabilized
    second = degeneracy_chain(sp, 2, 4).stabilized
    assert bracket_power(first, 3).is_subideal_of(second)
    assert bracket_power(Ideal.maximal(quadric.ambient), 9).is_subideal_of(second)


def test_finitistic_closure_of_quadric_socle_class(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    sp = gorenstein_params(quadric).validate()
    # the quadric is F-regular: the socle class never enters the closure
    report = finitistic_tc_check(sp, z, x, 3, 1)
    assert [row.t for row in report.rows] == [1, 2, 3]
    assert not any(row.vanishes for row in report.rows)
    assert all(row.verdict.label == 'NOT_IN_CLOSURE(1)' for row in report.rows)
    assert report.first_stage is None
    assert report.certification is Certification.REFUTED


def test_finitistic_closure_of_zero_class(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    report = finitistic_tc_check(gorenstein_params(quadric), y * z, x, 3, 1)
    assert len(report.rows) == 1
    assert report.rows[0].vanishes
    assert report.first_stage == 1
    assert report.certification is Certification.EXACT
    with pytest.raises(InvalidTestElement):
        finitistic_tc_check(gorenstein_params(quadric), z, x * y - z ** 2, 2, 1)
    with pytest.raises(InvalidRange):
        finitistic_tc_check(gorenstein_params(quadric), z, x, 0, 1)


def test_finitistic_closure_on_cubic_cone(cubic_cone) -> None:
    S = cubic_cone.ambient
    x, y, z = S.gens()
    sp = SuitableParams(cubic_cone, Ideal.unit(S), 1, (x, y), u=z ** 2).validate()
    report = finitistic_tc_check(sp, z ** 2, x ** 2, 3, 1)
    assert report.first_stage == 1
    assert not report.rows[0].vanishes
    assert report.certification is Certification.BOUNDED


@pytest.mark.slow
def test_colon_lemma_on_twisted_cubic(twisted_cubic) -> None:
    S = twisted_cubic.ambient
    s, t, u, v = S.gens()
    sp = SuitableParams(twisted_cubic, Ideal(S, [s, t]), 1, (s, v), a2=t)
    sp.check_multipliers()
    result = colon_lemma_check(sp, 1, [2])
    assert result.part1 is True
    assert result.part2 is None


@pytest.mark.slow
def test_degeneracy_ideals_of_cubic_cone_at_second_frobenius_power(cubic_cone) -> None:
    S = cubic_cone.ambient
    x, y, z = S.gens()
    cone = SuitableParams(cubic_cone, Ideal.unit(S), 1, (x, y), u=z ** 2).validate()
    first = degeneracy_chain(cone, 1, 2).stabilized
    second = degeneracy_chain(cone, 2, 2).stabilized
    assert bracket_power(Ideal.maximal(S), 49).is_subideal_of(second)
    assert bracket_power(first, 7).is_subideal_of(second)
