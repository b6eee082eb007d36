"""LU factorization with partial pivoting for the predictor/corrector solves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SINGULAR_RTOL = 1e-14


class SingularMatrixError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class LUFactorization:
    """Packed factors of ``M[pivot] = L @ U``; L has an implicit unit diagonal."""

    factors: np.ndarray
    pivot: np.ndarray
    sign: int
    min_pivot: float

    @property
    def L(self) -> np.ndarray:
        return np.tril(self.factors, -1) + np.eye(self.factors.shape[0])

    @property
    def U(self) -> np.ndarray:
        return np.triu(self.factors)


def lu_factor(M) -> LUFactorization:
    """Gaussian elimination with row pivoting.

    Raises SingularMatrixError if any pivot falls below
    ``1e-14 * max|M_ij|`` in absolute value.
    """
    a = np.array(M, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"lu_factor needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    tol = SINGULAR_RTOL * (np.abs(a).max() if a.size else 0.0)
    perm = np.arange(n)
    sign = 1
    min_pivot = np.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = abs(a[p, k])
        if piv == 0.0 or piv < tol:
            raise SingularMatrixError(f"pivot {piv:.3e} at column {k} below threshold {tol:.3e}")
        min_pivot = min(min_pivot, piv)
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return LUFactorization(a, perm, sign, float(min_pivot))


def lu_solve(F: LUFactorization, rhs) -> np.ndarray:
    rhs = np.asarray(rhs, dtype=np.float64)
    n = F.factors.shape[0]
    if rhs.shape != (n,):
        raise ValueError(f"rhs of shape {rhs.shape} does not match {n}x{n} factors")
    lu = F.factors
    y = rhs[F.pivot].copy()
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1 :] @ y[i + 1 :]) / lu[i, i]
    return y


def solve(M, rhs) -> np.ndarray:
    return lu_solve(lu_factor(M), rhs)
