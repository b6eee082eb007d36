"""Euler-Newton path tracking for ``A x^{m-1} = b`` with A a nonsingular M-tensor.

The homotopy ``H(x, t) = (t*A + (1-t)*I) x^{m-1} - b`` deforms the diagonal
system ``x^{[m-1]} = b`` (solution ``b^{[1/(m-1)]}``) into the target. Its
positive solution curve is followed from t=0 to t=1 by Euler prediction along
the tangent and fixed-t Newton correction, on the system scaled by the largest
magnitude among the entries of A and b.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .linalg import SingularMatrixError, lu_factor, lu_solve
from .tensor import (
    DenseTensor,
    apply,
    jacobian,
    partial_symmetrize,
    power_vector,
    symmetric_jacobian,
)

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    STEP_TOO_SMALL = "StepTooSmall"
    MAX_STEPS = "MaxSteps"
    SINGULAR_JACOBIAN = "SingularJacobian"


@dataclass(frozen=True)
class TrackerConfig:
    h_init: float = 0.2
    h_min: float = 1e-8
    expand: float = 2.0
    contract: float = 0.5
    newton_tol: float = 1e-10
    newton_max: int = 10
    final_tol: float = 1e-12
    max_predictor_steps: int = 500
    boundary_fraction: float = 0.9
    jacobian_mode: str = "on_the_fly"

    def __post_init__(self):
        if not 0 < self.contract < 1 < self.expand:
            raise ValueError("need 0 < contract < 1 < expand")
        if not 0 < self.h_min < self.h_init <= 1:
            raise ValueError("need 0 < h_min < h_init <= 1")
        if min(self.newton_tol, self.final_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.newton_max < 1 or self.max_predictor_steps < 1:
            raise ValueError("iteration limits must be >= 1")
        if not 0 < self.boundary_fraction < 1:
            raise ValueError("boundary_fraction must lie in (0, 1)")
        if self.jacobian_mode not in ("on_the_fly", "materialized"):
            raise ValueError(f"unknown jacobian mode {self.jacobian_mode!r}")


@dataclass(frozen=True)
class HomotopyProblem:
    A_scaled: DenseTensor
    b_scaled: np.ndarray
    omega: float
    A_orig: DenseTensor
    b_orig: np.ndarray

    @property
    def m(self) -> int:
        return self.A_scaled.order

    @property
    def n(self) -> int:
        return self.A_scaled.dim

    @cached_property
    def A_sym(self) -> DenseTensor:
        return partial_symmetrize(self.A_scaled)


@dataclass
class TrackState:
    x: np.ndarray
    t: float
    h: float
    euler_count: int = 0
    newton_count: int = 0


@dataclass
class NewtonResult:
    x: np.ndarray
    iterations: int
    converged: bool
    residual: float


@dataclass
class TrackResult:
    x: np.ndarray
    euitr: int
    nwitr: int
    residue_scaled: float
    residue_orig: float
    status: Status
    t: float = 1.0
    rejected: int = field(default=0, repr=False)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def scale_problem(A: DenseTensor, b) -> HomotopyProblem:
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (A.dim,):
        raise ValueError(f"b of shape {b.shape} does not match tensor dim {A.dim}")
    if np.any(b <= 0):
        raise ValueError("right-hand side must be positive")
    omega = float(max(np.abs(A.entries).max(), b.max()))
    if not np.any(A.entries):
        raise ValueError("coefficient tensor is identically zero")
    return HomotopyProblem(A.scaled(1.0 / omega), b / omega, omega, A, b)


def initial_point(b, m: int) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64)
    if np.any(b <= 0):
        raise ValueError("right-hand side must be positive")
    if m == 2:
        return b.copy()
    return power_vector(b, 1.0 / (m - 1))


def homotopy_eval(p: HomotopyProblem, x, t: float) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return t * apply(p.A_scaled, x) + (1 - t) * power_vector(x, p.m - 1) - p.b_scaled


def homotopy_jacobian_x(p: HomotopyProblem, x, t: float, mode: str = "on_the_fly") -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    m = p.m
    if mode == "materialized":
        JA = symmetric_jacobian(p.A_sym, x)
    else:
        JA = jacobian(p.A_scaled, x, mode)
    J = t * JA
    J[np.diag_indices_from(J)] += (1 - t) * (m - 1) * power_vector(x, m - 2)
    return J


def homotopy_dt(p: HomotopyProblem, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return apply(p.A_scaled, x) - power_vector(x, p.m - 1)


def tangent(p: HomotopyProblem, x, t: float, mode: str = "on_the_fly") -> np.ndarray:
    """dx/dt along the solution curve: solves ``D_x H * v = -D_t H``."""
    F = lu_factor(homotopy_jacobian_x(p, x, t, mode))
    return lu_solve(F, -homotopy_dt(p, x))


def euler_predict(p: HomotopyProblem, state: TrackState, h: float, mode: str = "on_the_fly") -> np.ndarray:
    """Euler step of length h from ``state``. May leave the positive orthant; caller checks."""
    if h == 0:
        return state.x.copy()
    return state.x + h * tangent(p, state.x, state.t, mode)


def _damped_step(x: np.ndarray, dx: np.ndarray, fraction: float) -> np.ndarray:
    # largest lam <= 1 keeping x + lam*dx >= (1 - fraction) * x
    neg = dx < 0
    lam = 1.0
    if np.any(neg):
        lam = min(1.0, float(np.min(fraction * x[neg] / -dx[neg])))
    return x + lam * dx


def newton_correct(
    p: HomotopyProblem,
    x_hat,
    t: float,
    cfg: TrackerConfig,
    tol: Optional[float] = None,
) -> NewtonResult:
    """Fixed-t Newton iteration on ``H(., t)`` started at ``x_hat``.

    Steps that would leave the positive orthant are damped. Returns an
    unconverged result after ``cfg.newton_max`` iterations; a singular
    Jacobian raises SingularMatrixError.
    """
    tol = cfg.newton_tol if tol is None else tol
    x = np.array(x_hat, dtype=np.float64)
    r = homotopy_eval(p, x, t)
    res = float(np.linalg.norm(r))
    if res <= tol:
        return NewtonResult(x, 0, True, res)
    for it in range(1, cfg.newton_max + 1):
        F = lu_factor(homotopy_jacobian_x(p, x, t, cfg.jacobian_mode))
        dx = lu_solve(F, -r)
        x = _damped_step(x, dx, cfg.boundary_fraction)
        r = homotopy_eval(p, x, t)
        res = float(np.linalg.norm(r))
        if res <= tol:
            return NewtonResult(x, it, True, res)
        if not np.isfinite(res):
            return NewtonResult(x, it, False, res)
    return NewtonResult(x, cfg.newton_max, False, res)


def _finish(p, x, state, status, rejected=0) -> TrackResult:
    res_scaled = float(np.linalg.norm(apply(p.A_scaled, x) - p.b_scaled))
    res_orig = float(np.linalg.norm(apply(p.A_orig, x) - p.b_orig))
    return TrackResult(
        x=x,
        euitr=state.euler_count,
        nwitr=state.newton_count,
        residue_scaled=res_scaled,
        residue_orig=res_orig,
        status=status,
        t=state.t,
        rejected=rejected,
    )


def track(
    A: DenseTensor,
    b,
    cfg: Optional[TrackerConfig] = None,
    callback: Optional[Callable[[TrackState], None]] = None,
) -> TrackResult:
    """Follow the positive solution path from t=0 to t=1 and polish at t=1.

    ``euitr`` counts accepted predictor steps; ``nwitr`` counts every corrector
    iteration, rejected steps and final polishing included. ``callback`` is
    invoked with the state after each accepted step.
    """
    cfg = cfg or TrackerConfig()
    p = scale_problem(A, b)
    mode = cfg.jacobian_mode
    state = TrackState(x=initial_point(p.b_scaled, p.m), t=0.0, h=cfg.h_init)
    attempts = 0
    rejected = 0

    try:
        while state.t < 1.0:
            if attempts >= cfg.max_predictor_steps:
                return _finish(p, state.x, state, Status.MAX_STEPS, rejected)
            if state.h < cfg.h_min:
                return _finish(p, state.x, state, Status.STEP_TOO_SMALL, rejected)
            attempts += 1
            last = state.h >= 1.0 - state.t
            h = 1.0 - state.t if last else state.h
            x_hat = euler_predict(p, state, h, mode)
            if not np.all(x_hat > 0):
                log.debug("t=%.4g h=%.3g: predictor left the positive orthant", state.t, h)
                rejected += 1
                state.h = h * cfg.contract
                continue
            t_new = 1.0 if last else state.t + h
            nr = newton_correct(p, x_hat, t_new, cfg)
            state.newton_count += nr.iterations
            if not nr.converged:
                log.debug("t=%.4g h=%.3g: corrector failed (res %.3e)", state.t, h, nr.residual)
                rejected += 1
                state.h = h * cfg.contract
                continue
            if not np.all(nr.x > 0):
                raise RuntimeError(f"accepted iterate left the positive orthant at t={t_new}")
            state.x, state.t = nr.x, t_new
            state.euler_count += 1
            state.h = h * cfg.expand if nr.iterations <= 2 else h
            if callback is not None:
                callback(state)

        polish = newton_correct(p, state.x, 1.0, cfg, tol=cfg.final_tol)
        state.newton_count += polish.iterations
        x = polish.x
    except SingularMatrixError as exc:
        log.warning("singular Jacobian at t=%.6g: %s", state.t, exc)
        return _finish(p, state.x, state, Status.SINGULAR_JACOBIAN, rejected)

    result = _finish(p, x, state, Status.CONVERGED, rejected)
    if not (polish.converged and result.residue_scaled <= cfg.final_tol):
        # polishing budget exhausted above the termination threshold
        result.status = Status.MAX_STEPS
    return result
