import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtsolve.linalg import SingularMatrixError, lu_factor, lu_solve, solve


def test_identity_factors():
    F = lu_factor(np.eye(3))
    np.testing.assert_array_equal(F.factors, np.eye(3))
    np.testing.assert_array_equal(F.pivot, [0, 1, 2])
    assert F.min_pivot == 1.0 and F.sign == 1


def test_permutation_matrix():
    F = lu_factor([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(F.pivot, [1, 0])
    assert F.sign == -1
    np.testing.assert_array_equal(lu_solve(F, [3.0, 7.0]), [7.0, 3.0])


def test_rank_one_is_singular():
    with pytest.raises(SingularMatrixError):
        lu_factor([[1.0, 2.0], [2.0, 4.0]])


def test_zero_matrix_is_singular():
    with pytest.raises(SingularMatrixError):
        lu_factor(np.zeros((2, 2)))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        lu_factor(np.ones((2, 3)))


def test_small_solves():
    np.testing.assert_array_equal(solve(np.eye(2), [3.0, 7.0]), [3.0, 7.0])
    np.testing.assert_array_equal(solve([[2.0, 0.0], [0.0, 4.0]], [2.0, 8.0]), [1.0, 2.0])


def test_rhs_length_checked():
    with pytest.raises(ValueError):
        lu_solve(lu_factor(np.eye(3)), [1.0, 2.0])


def test_roundtrip_5x5(rng):
    M = rng.standard_normal((5, 5)) + 5 * np.eye(5)
    y = rng.standard_normal(5)
    np.testing.assert_allclose(solve(M, M @ y), y, rtol=1e-10, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_reconstruction_and_roundtrip(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((n, n)) + n * np.eye(n)
    y = rng.standard_normal(n)
    F = lu_factor(M)
    assert np.max(np.abs(F.L @ F.U - M[F.pivot])) <= 1e-12 * np.abs(M).max()
    assert np.isclose(F.sign * np.prod(np.diag(F.U)), np.linalg.det(M), rtol=1e-9)
    rhs = M @ y
    x = lu_solve(F, rhs)
    assert np.linalg.norm(x - y) <= 1e-10 * max(np.linalg.norm(y), 1.0)
    assert np.linalg.norm(M @ x - rhs) <= 1e-10 * max(np.linalg.norm(rhs), 1e-300)


def test_deterministic(rng):
    M = rng.standard_normal((6, 6))
    a, b = lu_factor(M), lu_factor(M.copy())
    assert a.factors.tobytes() == b.factors.tobytes()
    np.testing.assert_array_equal(a.pivot, b.pivot)
