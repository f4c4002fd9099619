import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from arcalc.linalg import FieldError, PrimeField

P = 32003


def minor_rank(M, p):
    """Largest k with a nonzero k x k minor mod p (independent of elimination)."""
    rows, cols = M.shape
    for k in range(min(rows, cols), 0, -1):
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                if int(sympy.Matrix(M[np.ix_(r, c)].tolist()).det()) % p:
                    return k
    return 0


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.integers(0, P - 1), min_size=r * c, max_size=r * c).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(r, c)
        )
    )
)


def test_rref_identity(F):
    R, piv, rank = F.rref(np.eye(2, dtype=np.int64))
    assert np.array_equal(R, np.eye(2)) and piv == [0, 1] and rank == 2


def test_rref_zero(F):
    R, piv, rank = F.rref(np.zeros((3, 4), dtype=np.int64))
    assert not R.any() and piv == [] and rank == 0


def test_rank_matches_minor_oracle(F, rng):
    for _ in range(5):
        M = F.random(rng, 5, 5)
        M[4] = (M[0] + 7 * M[1]) % P
        assert F.rank(M) == minor_rank(M, P)


def test_rank_matches_minor_oracle_gf2(rng):
    F2 = PrimeField(2)
    for _ in range(10):
        M = F2.random(rng, 4, 5)
        assert F2.rank(M) == minor_rank(M, 2)


def test_solve_identity(F):
    B = np.arange(6, dtype=np.int64).reshape(3, 2)
    assert np.array_equal(F.solve(np.eye(3, dtype=np.int64), B), B)


def test_solve_inconsistent(F):
    assert F.solve(np.array([[1, 0], [0, 0]]), np.array([[0], [1]])) is None


def test_solve_free_variables_zero(F):
    assert F.solve(np.array([[1, 1]]), np.array([[5]])).tolist() == [[5], [0]]


def test_solve_shape_mismatch(F):
    with pytest.raises(FieldError):
        F.solve(np.eye(2, dtype=np.int64), np.zeros((3, 1), dtype=np.int64))


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        PrimeField(12)


def test_inverse(F, rng):
    M = F.random(rng, 5, 5)
    assert F.is_invertible(M)
    assert np.array_equal(F.mul(M, F.inv(M)), np.eye(5))


def test_charpoly_matches_sympy(F, rng):
    x = sympy.symbols("x")
    for d in (1, 3, 6):
        M = F.random(rng, d, d)
        ref = sympy.Matrix(M.tolist()).charpoly(x).all_coeffs()
        assert [int(c) % P for c in ref] == F.charpoly(M)


def test_nilpotent(F):
    N = np.diag([1, 1, 1], k=-1).astype(np.int64)
    assert F.is_nilpotent(N)
    assert not F.is_nilpotent(N + np.eye(4, dtype=np.int64))


def test_intersect(F):
    X = np.array([[1, 0], [0, 1], [0, 0]])
    Y = np.array([[0, 0], [1, 0], [0, 1]])
    I = F.intersect(X, Y)
    assert I.shape[1] == 1 and F.in_span(I, np.array([0, 1, 0]))


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_rank_nullity_and_kernel(M):
    F = PrimeField()
    K = F.kernel(M)
    assert K.shape[1] + F.rank(M) == M.shape[1]
    assert not F.mul(M, K).any()
    assert F.rank(K) == K.shape[1]


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_rref_idempotent(M):
    F = PrimeField()
    R = F.rref(M)[0]
    assert np.array_equal(F.rref(R)[0], R)


@settings(max_examples=30, deadline=None)
@given(matrices, st.integers(0, 2**32 - 1))
def test_solve_consistent_systems(M, seed):
    F = PrimeField()
    X0 = F.random(np.random.default_rng(seed), M.shape[1], 2)
    X = F.solve(M, F.mul(M, X0))
    assert X is not None and np.array_equal(F.mul(M, X), F.mul(M, X0))
