"""
Shared fixtures: the corpus rings, a mod-p rank oracle and the hypothesis profile
"""
import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from basis_cache import get_basis_cache
from config_loader import reset_config
from field_poly import polynomial_ring, monomials_of_degree
from groebner import Ideal
from ideal_algebra import QuotientRingSpec

settings.register_profile(
    "charkit",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("charkit")


@pytest.fixture(autouse=True)
def fresh_state():
    get_basis_cache().clear()
    yield
    reset_config()


@pytest.fixture
def quadric():
    """GF(3)[x,y,z]/(xy - z^2)"""
    S = polynomial_ring(3, 'x,y,z')
    x, y, z = S.gens()
    return QuotientRingSpec(S, Ideal(S, [x * y - z ** 2]), name='R')


@pytest.fixture
def cubic_cone():
    """GF(7)[x,y,z]/(x^3 + y^3 + z^3)"""
    S = polynomial_ring(7, 'x,y,z')
    x, y, z = S.gens()
    return QuotientRingSpec(S, Ideal(S, [x ** 3 + y ** 3 + z ** 3]), name='R')


@pytest.fixture
def twisted_cubic():
    """GF(7)[s,t,u,v] modulo the 2x2 minors of [[s,t,u],[t,u,v]]"""
    S = polynomial_ring(7, 's,t,u,v')
    s, t, u, v = S.gens()
    minors = [s * u - t ** 2, s * v - t * u, t * v - u ** 2]
    return QuotientRingSpec(S, Ideal(S, minors), name='R')


def rank_mod_p(rows, p):
    """Rank of an integer matrix over GF(p) by dense elimination"""
    if not rows:
        return 0
    A = np.array(rows, dtype=np.int64) % p
    nrows, ncols = A.shape
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if A[r, c]), None)
        if pivot is None:
            continue
        A[[rank, pivot]] = A[[pivot, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), p - 2, p)) % p
        for r in range(nrows):
            if r != rank and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[rank]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def graded_colength(generators, nvars, p, max_degree=60):
    """
    dim_F S/I for a homogeneous m-primary I, summing the Hilbert function
    computed degree by degree from spanning sets m*g
    """
    total = 0
    for d in range(max_degree + 1):
        basis = monomials_of_degree(nvars, d)
        index = {m: k for k, m in enumerate(basis)}
        rows = []
        for g in generators:
            shift = d - g.degree()
            if shift < 0:
                continue
            for m in monomials_of_degree(nvars, shift):
                row = [0] * len(basis)
                for e, c in g.terms:
                    row[index[tuple(a + b for a, b in zip(e, m))]] = c
                rows.append(row)
        value = len(basis) - rank_mod_p(rows, p)
        if value == 0:
            return total
        total += value
    raise AssertionError("Hilbert function did not vanish below max_degree")


def standard_monomial_count(leads, bounds):
    """Brute-force count of monomials below bounds divisible by no lead"""
    count = 0
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(all(a <= b for a, b in zip(lead, m)) for lead in leads):
            count += 1
    return count
