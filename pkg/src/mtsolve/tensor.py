"""Dense order-m tensors and the contractions used by the solver.

Entries are stored in one flat float64 array with the last index varying
fastest, so ``entries.reshape((n,) * m)`` is the natural C-ordered view.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Raised when a fractional power is taken of a non-positive component."""


@dataclass(frozen=True, eq=False)
class DenseTensor:
    order: int
    dim: int
    entries: np.ndarray

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        entries = np.array(self.entries, dtype=np.float64).ravel()
        if entries.size != self.dim**self.order:
            raise ValueError(
                f"expected {self.dim ** self.order} entries for m={self.order}, "
                f"n={self.dim}; got {entries.size}"
            )
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_array(cls, arr) -> DenseTensor:
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim < 2 or len(set(arr.shape)) != 1:
            raise ValueError(f"need a cubical array of ndim >= 2, got shape {arr.shape}")
        return cls(arr.ndim, arr.shape[0], arr)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.dim,) * self.order

    def full(self) -> np.ndarray:
        """Read-only view with shape ``(n,) * m``."""
        return self.entries.reshape(self.shape)

    def scaled(self, c: float) -> DenseTensor:
        return DenseTensor(self.order, self.dim, self.entries * c)

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return (
            self.order == other.order
            and self.dim == other.dim
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self):
        return f"DenseTensor(order={self.order}, dim={self.dim})"


def flat_index(idx, n: int) -> int:
    """Encode a multi-index as a flat offset (last index fastest)."""
    off = 0
    for i in idx:
        off = off * n + int(i)
    return off


def _check_vector(A: DenseTensor, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (A.dim,):
        raise ValueError(f"vector of shape {x.shape} does not match tensor dim {A.dim}")
    return x


def identity_tensor(m: int, n: int) -> DenseTensor:
    if m < 2 or n < 1:
        raise ValueError(f"invalid identity tensor size m={m}, n={n}")
    entries = np.zeros(n**m)
    # stride between consecutive diagonal entries: 1 + n + ... + n^(m-1)
    step = sum(n**k for k in range(m))
    entries[::step] = 1.0
    return DenseTensor(m, n, entries)


def power_vector(x, p: float) -> np.ndarray:
    """Componentwise ``x_i ** p``."""
    x = np.asarray(x, dtype=np.float64)
    if float(p).is_integer():
        return x ** int(p)
    if np.any(x <= 0):
        raise DomainError(f"fractional power {p} of a non-positive component")
    return x**p


def contract_trailing(entries: np.ndarray, x: np.ndarray, count: int) -> np.ndarray:
    """Contract the last ``count`` axes of a flat tensor with ``x``."""
    n = x.shape[0]
    out = entries
    for _ in range(count):
        out = out.reshape(-1, n) @ x
    return out


def apply(A: DenseTensor, x) -> np.ndarray:
    """The vector ``A x^{m-1}``: contract every index but the first with x."""
    x = _check_vector(A, x)
    return contract_trailing(A.entries, x, A.order - 1)


def partial_symmetrize(A: DenseTensor) -> DenseTensor:
    """Average A over all permutations of its trailing m-1 indices.

    Trailing index tuples are grouped by their sorted multiset; each group's
    mean is written back to every member. A group of distinct arrangements
    appears equally often among the (m-1)! permutations, so this is the
    same average without the factorial loop.
    """
    m, n = A.order, A.dim
    if m == 2:
        return A
    k = m - 1
    tails = np.indices((n,) * k).reshape(k, -1).T
    tails.sort(axis=1)
    keys = np.zeros(tails.shape[0], dtype=np.int64)
    for col in range(k):
        keys = keys * n + tails[:, col]
    _, group, counts = np.unique(keys, return_inverse=True, return_counts=True)
    rows = A.entries.reshape(n, -1)
    sums = np.zeros((n, counts.size))
    np.add.at(sums, (slice(None), group), rows)
    means = sums / counts
    return DenseTensor(m, n, means[:, group])


def symmetric_jacobian(A_sym: DenseTensor, x) -> np.ndarray:
    """``(m-1) Â x^{m-2}`` for a tensor already symmetric in its trailing indices."""
    x = _check_vector(A_sym, x)
    m, n = A_sym.order, A_sym.dim
    return (m - 1) * contract_trailing(A_sym.entries, x, m - 2).reshape(n, n)


def _jacobian_on_the_fly(A: DenseTensor, x: np.ndarray) -> np.ndarray:
    m, n = A.order, A.dim
    full = A.full()
    J = np.zeros((n, n))
    # derivative wrt x_j placed at trailing position k, summed over k
    for k in range(1, m):
        moved = np.ascontiguousarray(np.moveaxis(full, k, 1))
        J += contract_trailing(moved.ravel(), x, m - 2).reshape(n, n)
    return J


def jacobian(A: DenseTensor, x, mode: str = "on_the_fly") -> np.ndarray:
    """Derivative of ``x -> A x^{m-1}``, i.e. ``(m-1) Â x^{m-2}``.

    ``on_the_fly`` sums the m-1 single-position derivatives straight from A;
    ``materialized`` builds Â first. Both give the same matrix.
    """
    x = _check_vector(A, x)
    if mode == "on_the_fly":
        return _jacobian_on_the_fly(A, x)
    if mode == "materialized":
        return symmetric_jacobian(partial_symmetrize(A), x)
    raise ValueError(f"unknown jacobian mode {mode!r}")
