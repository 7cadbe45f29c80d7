"""
Tests for eliminations, intersections, colons, saturations and Frobenius powers
"""
import pytest
from hypothesis import given, strategies as st

from error_handler import DivisionByZero, InvalidFrobeniusPower, RingMismatch
from field_poly import polynomial_ring
from groebner import INFINITE, Ideal
from ideal_algebra import (
    QuotientRingSpec, bracket_power, colon, eliminate, ideal_sum_product_power, intersect,
    is_power_of, saturate, saturation, symbolic_power,
)


@pytest.fixture
def S():
    return polynomial_ring(5, 'x,y,z')


def monomial_ideal(ring, exps_list):
    return Ideal(ring, [ring.monomial(e) for e in exps_list])


def test_sum_product_power(S) -> None:
    x, y, z = S.gens()
    I, J = Ideal(S, [x]), Ideal(S, [y])
    assert ideal_sum_product_power('sum', I, J) == Ideal(S, [x, y])
    assert ideal_sum_product_power('product', I, J) == Ideal(S, [x * y])
    assert ideal_sum_product_power('power', Ideal(S, [x, y]), 2) == Ideal(S, [x ** 2, x * y, y ** 2])
    with pytest.raises(ValueError):
        ideal_sum_product_power('quotient', I, J)


def test_eliminate_twisted_cubic_parametrization() -> None:
    T = polynomial_ring(7, 'a,b,s,t,u,v')
    a, b, s, t, u, v = T.gens()
    graph = Ideal(T, [s - a ** 3, t - a ** 2 * b, u - a * b ** 2, v - b ** 3])
    image = eliminate(graph, ['a', 'b'])
    assert image.contains(s * u - t ** 2)
    assert image.contains(s * v - t * u)
    assert image.contains(t * v - u ** 2)
    assert not image.contains(s * v - u ** 2)
    with pytest.raises(KeyError):
        eliminate(graph, ['w'])


def test_intersect_monomial_ideals_is_lcm(S) -> None:
    x, y, z = S.gens()
    I = monomial_ideal(S, [(2, 0, 0), (0, 1, 1)])
    J = monomial_ideal(S, [(1, 1, 0), (0, 0, 2)])
    expected = Ideal(S, [x ** 2 * y, x ** 2 * z ** 2, x * y * z, y * z ** 2])
    assert intersect(I, J) == expected
    assert intersect(I, Ideal.zero(S)).is_zero()
    with pytest.raises(RingMismatch):
        intersect(I, Ideal(polynomial_ring(5, 'x,y'), [1]))


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3),
       st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_monomial_colon_divides_exponents(gens, divisor) -> None:
    R = polynomial_ring(3, 'x,y')
    I = monomial_ideal(R, gens)
    expected = monomial_ideal(R, [tuple(max(a - b, 0) for a, b in zip(g, divisor)) for g in gens])
    assert colon(I, R.monomial(divisor)) == expected


def test_colon_edge_cases(S) -> None:
    x, y, z = S.gens()
    I = Ideal(S, [x * y, x * z])
    assert colon(I, x) == Ideal(S, [y, z])
    assert colon(I, S.one()) == I
    assert colon(I, Ideal(S, [y, z])) == Ideal(S, [x])
    assert colon(Ideal.zero(S), x).is_zero()
    with pytest.raises(DivisionByZero):
        colon(I, S.zero())
    with pytest.raises(DivisionByZero):
        colon(I, Ideal.zero(S))


def test_saturate_reports_exponent(S) -> None:
    x, y, z = S.gens()
    sat, k = saturate(Ideal(S, [x ** 3 * y, x * z]), x)
    assert sat == Ideal(S, [y, z])
    assert k == 3
    sat, k = saturate(Ideal(S, [y]), x)
    assert sat == Ideal(S, [y]) and k == 0
    m = Ideal.maximal(S)
    embedded = Ideal(S, [x]) * m
    assert saturate(embedded, m)[0] == Ideal(S, [x])
    assert saturation(embedded, m) == Ideal(S, [x])


def test_bracket_powers(S) -> None:
    x, y, z = S.gens()
    I = Ideal(S, [x + y, z])
    assert bracket_power(I, 5) == Ideal(S, [x ** 5 + y ** 5, z ** 5])
    assert bracket_power(I, 1) == I
    with pytest.raises(InvalidFrobeniusPower):
        bracket_power(I, 10)
    assert is_power_of(125, 5)
    assert not is_power_of(0, 5)


@given(st.integers(0, 4), st.integers(0, 4))
def test_bracket_power_ignores_generating_set(a, b) -> None:
    R = polynomial_ring(3, 'x,y')
    x, y = R.gens()
    I = Ideal(R, [x + y, x - y])
    other = Ideal(R, [x + y + (x - y) * x ** a * y ** b, x - y])
    assert I == other
    assert bracket_power(I, 3) == bracket_power(other, 3)


def test_quotient_ring_helpers(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    assert quadric.dimension == 2
    assert quadric.height == 1
    assert quadric.is_zero(x * y - z ** 2)
    assert quadric.length(Ideal(S, [x, y])) == 2
    assert quadric.length(Ideal(S, [x])) is INFINITE
    assert quadric.equal(Ideal(S, [x, y]), Ideal(S, [x, y, z ** 2]))
    assert quadric.contains(Ideal(S, [x]), z ** 2 * y)
    assert quadric.maximal_ideal() == Ideal(S, [x, y, z])
    with pytest.raises(RingMismatch):
        quadric.lift(Ideal(polynomial_ring(3, 'x,y'), [1]))


def test_symbolic_power_of_complete_intersection(S) -> None:
    x, y, z = S.gens()
    I = Ideal(S, [x, y])
    assert symbolic_power(I, 3, Ideal.maximal(S)) == I ** 3
    assert symbolic_power(I, 0, Ideal.maximal(S)).is_unit()


def test_symbolic_square_of_ruling_on_quadric(quadric) -> None:
    S = quadric.ambient
    x, y, z = S.gens()
    J = Ideal(S, [x, z])
    square = symbolic_power(J, 2, Ideal.maximal(S), quotient=quadric)
    assert quadric.equal(square, Ideal(S, [x]))
    assert not quadric.equal(J ** 2, Ideal(S, [x]))
