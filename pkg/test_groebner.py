"""
Tests for the Buchberger engine, ideal membership, colength and dimension
"""
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from basis_cache import get_basis_cache
from conftest import standard_monomial_count
from error_handler import EmptyVariety, ResourceLimitExceeded, RingMismatch
from field_poly import polynomial_ring
from groebner import INFINITE, Ideal, colength, groebner_basis, ideal_member, krull_dimension, normal_form


def to_sympy(f, symbols):
    expr = sympy.Integer(0)
    for exps, c in f.terms:
        term = sympy.Integer(c)
        for s, a in zip(symbols, exps):
            term *= s ** a
        expr += term
    return expr


def sympy_basis(ideal):
    """Reduced grevlex basis computed independently by sympy, as our polynomials"""
    ring = ideal.ring
    symbols = sympy.symbols(' '.join(ring.variables))
    G = sympy.groebner([to_sympy(g, symbols) for g in ideal.generators], *symbols,
                       modulus=ring.p, order='grevlex')
    result = set()
    for g in G.exprs:
        poly = sympy.Poly(g, *symbols, modulus=ring.p)
        result.add(ring.from_dict({tuple(m): int(c) for m, c in poly.terms()}).monic())
    return result


def test_basis_of_small_ideal() -> None:
    S = polynomial_ring(5, 'x,y')
    x, y = S.gens()
    gb = Ideal(S, [x ** 2 - y, x * y]).groebner()
    assert set(gb.basis) == {x ** 2 - y, x * y, y ** 2}
    assert gb.leading_monomials() == [(2, 0), (1, 1), (0, 2)]
    assert normal_form(x ** 3, gb) == S.zero()
    assert ideal_member(y ** 3, Ideal(S, [x ** 2 - y, x * y]))
    assert groebner_basis(Ideal(S, [x * y, x ** 2 - y])) == gb


@pytest.mark.parametrize('p,generators', [
    (5, ['x^2 - y*z', 'x*y - z^2', 'y^2 - x*z']),
    (7, ['x^3 + y^3 + z^3', 'x*y*z - 1']),
    (3, ['x^2*y + z', 'y^2 - x*z + 1', 'z^3']),
    (2, ['x*y + y*z + z*x', 'x + y + z + 1']),
])
def test_matches_independent_basis(p, generators) -> None:
    S = polynomial_ring(p, 'x,y,z')
    ideal = Ideal(S, [S.parse(g) for g in generators])
    assert set(ideal.groebner().basis) == sympy_basis(ideal)


@settings(max_examples=20)
@given(st.lists(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                                st.integers(1, 6), min_size=1, max_size=3),
                min_size=1, max_size=3))
def test_random_bases_match_sympy(term_dicts) -> None:
    S = polynomial_ring(7, 'x,y,z')
    ideal = Ideal(S, [S.from_dict(d) for d in term_dicts])
    if ideal.is_zero():
        return
    assert set(ideal.groebner().basis) == sympy_basis(ideal)


def test_ideal_equality_and_membership() -> None:
    S = polynomial_ring(5, 'x,y')
    x, y = S.gens()
    I = Ideal(S, [x + y, x - y])
    assert I == Ideal.maximal(S)
    assert x in I
    assert not Ideal(S, [x ** 2]).contains(x)
    assert Ideal(S, [x * y]).is_subideal_of(I)
    assert Ideal.unit(S).is_unit()
    assert Ideal.zero(S).is_zero()
    assert (I ** 0).is_unit()
    with pytest.raises(RingMismatch):
        I + Ideal(polynomial_ring(7, 'x,y'), [1])


def test_colength_of_monomial_ideals() -> None:
    S = polynomial_ring(3, 'x,y,z')
    x, y, z = S.gens()
    assert colength(Ideal(S, [x ** 2, y ** 3, z])) == 6
    assert colength(Ideal(S, [x, y])) is INFINITE
    assert colength(Ideal.unit(S)) == 0


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=4),
       st.integers(1, 4), st.integers(1, 4))
def test_colength_matches_staircase_count(extra, a, b) -> None:
    S = polynomial_ring(5, 'x,y')
    leads = [(a, 0), (0, b)] + [m for m in extra if any(m)]
    ideal = Ideal(S, [S.monomial(m) for m in leads])
    assert colength(ideal) == standard_monomial_count(leads, (a, b))


def test_krull_dimension() -> None:
    S = polynomial_ring(7, 's,t,u,v')
    s, t, u, v = S.gens()
    twisted = Ideal(S, [s * u - t ** 2, s * v - t * u, t * v - u ** 2])
    assert krull_dimension(twisted) == 2
    assert krull_dimension(Ideal.zero(S)) == 4
    assert krull_dimension(Ideal.maximal(S)) == 0
    with pytest.raises(EmptyVariety):
        krull_dimension(Ideal.unit(S))


def test_bases_are_cached() -> None:
    S = polynomial_ring(5, 'x,y')
    x, y = S.gens()
    Ideal(S, [x ** 2, y]).groebner()
    Ideal(S, [x ** 2, y]).groebner()
    stats = get_basis_cache().get_stats()
    assert stats['hits'] == 1
    assert stats['misses'] == 1


def test_step_cap(monkeypatch) -> None:
    monkeypatch.setenv('CHARKIT_MAX_GB_STEPS', '1')
    S = polynomial_ring(5, 'x,y')
    x, y = S.gens()
    with pytest.raises(ResourceLimitExceeded):
        Ideal(S, [x ** 2 - y, x * y]).groebner()


def test_membership_in_square_of_monomial_ideal() -> None:
    S = polynomial_ring(5, 'x,y,z')
    x, y, z = S.gens()
    square = Ideal(S, [x * y, x * z, y * z]) ** 2
    assert not ideal_member(x * y * z, square)
    assert ideal_member((x * y * z) ** 2, square)
    assert normal_form(y, Ideal(S, [x]).groebner()) == y
