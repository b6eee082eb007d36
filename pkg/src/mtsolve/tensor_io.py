"""Plain-text tensor (``MTEN1``) and vector (``MVEC1``) files.

    MTEN1 m n
    <n^m entries, last index fastest, whitespace separated>

    MVEC1 n
    <n entries>

Entries are written with 17 significant digits so float64 values survive a
round trip bit for bit.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .tensor import DenseTensor

TENSOR_MAGIC = "MTEN1"
VECTOR_MAGIC = "MVEC1"
PER_LINE = 8


class FormatError(ValueError):
    def __init__(self, msg: str, path=None, line: int | None = None):
        where = f"{path}:" if path is not None else ""
        where += f"{line}: " if line is not None else (" " if where else "")
        super().__init__(f"{where}{msg}")
        self.line = line


def _format_entries(values: np.ndarray) -> str:
    vals = [format(float(v), ".17g") for v in values]
    return "\n".join(" ".join(vals[i : i + PER_LINE]) for i in range(0, len(vals), PER_LINE))


def write_tensor(path, A: DenseTensor) -> None:
    body = _format_entries(A.entries)
    Path(path).write_text(f"{TENSOR_MAGIC} {A.order} {A.dim}\n{body}\n")


def write_vector(path, x) -> None:
    x = np.asarray(x, dtype=np.float64).ravel()
    Path(path).write_text(f"{VECTOR_MAGIC} {x.size}\n{_format_entries(x)}\n")


def _read(path, magic: str, nfields: int):
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise FormatError("empty file", path, 1)
    head = lines[0].split()
    if len(head) != nfields + 1 or head[0] != magic:
        raise FormatError(f"expected header '{magic}' followed by {nfields} integers", path, 1)
    try:
        dims = [int(h) for h in head[1:]]
    except ValueError:
        raise FormatError(f"non-integer size in header {lines[0]!r}", path, 1) from None
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        for tok in line.split():
            try:
                values.append(float(tok))
            except ValueError:
                raise FormatError(f"unparsable entry {tok!r}", path, lineno) from None
    return dims, np.array(values), len(lines)


def read_tensor(path) -> DenseTensor:
    (m, n), values, nlines = _read(path, TENSOR_MAGIC, 2)
    if m < 2 or n < 1:
        raise FormatError(f"invalid tensor size m={m}, n={n}", path, 1)
    if values.size != n**m:
        raise FormatError(f"header declares {n ** m} entries, found {values.size}", path, nlines)
    return DenseTensor(m, n, values)


def read_vector(path) -> np.ndarray:
    (n,), values, nlines = _read(path, VECTOR_MAGIC, 1)
    if n < 1:
        raise FormatError(f"invalid vector length {n}", path, 1)
    if values.size != n:
        raise FormatError(f"header declares {n} entries, found {values.size}", path, nlines)
    return values
