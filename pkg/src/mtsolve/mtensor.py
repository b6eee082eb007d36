"""M-tensor construction, nonsingularity checks and random test instances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import DenseTensor, apply, identity_tensor


@dataclass(frozen=True)
class MTensorDecomposition:
    """A witness ``A = s*I - B`` with B entrywise nonnegative."""

    s: float
    B: DenseTensor

    def __post_init__(self):
        if np.any(self.B.entries < 0):
            raise ValueError("B must be entrywise nonnegative")


@dataclass(frozen=True)
class GeneratorConfig:
    m: int
    n: int
    epsilon: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.m < 2 or self.n < 1:
            raise ValueError(f"invalid size m={self.m}, n={self.n}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


def compose(d: MTensorDecomposition) -> DenseTensor:
    B = d.B
    eye = identity_tensor(B.order, B.dim)
    return DenseTensor(B.order, B.dim, d.s * eye.entries - B.entries)


def max_row_sum(B: DenseTensor) -> float:
    """Largest slice sum ``max_i sum B[i, ...]``; an upper bound on rho(B) for B >= 0."""
    if np.any(B.entries < 0):
        raise ValueError("max_row_sum bounds the spectral radius only for B >= 0")
    return float(B.entries.reshape(B.dim, -1).sum(axis=1).max())


def certify_nonsingular_m(A: DenseTensor, y) -> bool:
    """Check the Z-sign pattern of A and that ``A y^{m-1} > 0`` for a positive y."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (A.dim,) or np.any(y <= 0):
        raise ValueError("witness y must be a positive vector of length n")
    off_diag = A.entries.copy()
    off_diag[identity_tensor(A.order, A.dim).entries == 1.0] = 0.0
    if np.any(off_diag > 0):
        return False
    return bool(np.all(apply(A, y) > 0))


def tau0(s: float, rho_bound: float) -> float:
    """How far past t=1 the homotopy tensor stays a nonsingular M-tensor."""
    if not s > rho_bound:
        raise ValueError(f"need s > rho, got s={s}, rho={rho_bound}")
    if rho_bound < 0:
        raise ValueError("rho must be nonnegative")
    denom = rho_bound - s + 2
    if denom > 0:
        return (s - rho_bound) / denom
    return 1.0


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def generate_instance(cfg: GeneratorConfig):
    """Random nonsingular M-tensor system, reproducible from ``cfg.seed``.

    Draws B's entries in flat order, then b, from one PCG64 stream.
    Returns ``(A, b, decomposition)``.
    """
    rng = make_rng(cfg.seed)
    B = DenseTensor(cfg.m, cfg.n, rng.random(cfg.n**cfg.m))
    b = rng.random(cfg.n)
    s = (1.0 + cfg.epsilon) * max_row_sum(B)
    d = MTensorDecomposition(s, B)
    return compose(d), b, d
