"""Dense complex linear algebra on labeled tensor-product spaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` stored row-major.
Every operation takes its dimensions explicitly; nothing is broadcast.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_OFF_TOL = 1e-12
MAX_JACOBI_SWEEPS = 100


class DimensionError(ValueError):
    """Raised when matrix shapes and a DimensionSpec disagree."""


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class DimensionSpec:
    """Ordered labeled subsystem dimensions, e.g. ``(("X", 2), ("Y", 3))``."""

    parts: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        parts = tuple((str(label), int(dim)) for label, dim in self.parts)
        object.__setattr__(self, "parts", parts)
        labels = [label for label, _ in parts]
        if not parts:
            raise DimensionError("DimensionSpec needs at least one subsystem")
        if len(set(labels)) != len(labels):
            raise DimensionError(f"duplicate subsystem labels in {labels}")
        for label, dim in parts:
            if dim < 2:
                raise DimensionError(f"subsystem {label!r} has dimension {dim} < 2")

    @classmethod
    def of(cls, *parts: Tuple[str, int]) -> "DimensionSpec":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str, labels: Sequence[str] | None = None) -> "DimensionSpec":
        """Parse ``"2x3"``-style strings; labels default to X, Y, Z, W, ..."""
        try:
            dims = [int(tok) for tok in text.lower().split("x")]
        except ValueError as exc:
            raise DimensionError(f"cannot parse dimensions {text!r}") from exc
        if labels is None:
            default = "XYZW"
            labels = [default[i] if i < len(default) else f"S{i}" for i in range(len(dims))]
        if len(labels) != len(dims):
            raise DimensionError("label count does not match dimension count")
        return cls(tuple(zip(labels, dims)))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.parts)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(dim for _, dim in self.parts)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DimensionError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    def dim(self, label: str) -> int:
        return self.parts[self.index(label)][1]

    def select(self, labels: Iterable[str]) -> "DimensionSpec":
        """Sub-spec over ``labels``, kept in this spec's order."""
        wanted = set(labels)
        for label in wanted:
            self.index(label)
        return DimensionSpec(tuple(p for p in self.parts if p[0] in wanted))

    def to_json(self) -> list:
        return [[label, dim] for label, dim in self.parts]

    @classmethod
    def from_json(cls, data) -> "DimensionSpec":
        return cls(tuple((label, dim) for label, dim in data))


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*mats) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, as_matrix(m))
    return out


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def max_abs(a) -> float:
    """Max-abs entrywise norm; the distance metric used throughout."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_defect(m) -> float:
    m = as_matrix(m)
    return max_abs(m - m.conj().T)


def partial_trace(m, dims: DimensionSpec, keep: Iterable[str]) -> np.ndarray:
    """Trace out every subsystem whose label is not in ``keep``.

    The kept factors appear in the order of ``dims``.
    """
    m = as_matrix(m)
    keep = set(keep)
    n = dims.total
    if m.shape != (n, n):
        raise DimensionError(f"matrix shape {m.shape} does not match total dimension {n}")
    for label in keep:
        dims.index(label)
    if not keep or len(keep) == len(dims.parts):
        raise DimensionError("keep must be a nonempty proper subset of the subsystem labels")

    k = len(dims.parts)
    tensor = m.reshape(dims.dims + dims.dims)
    row_idx = list(range(k))
    col_idx = [k + i for i in range(k)]
    out_rows, out_cols = [], []
    for i, label in enumerate(dims.labels):
        if label in keep:
            out_rows.append(row_idx[i])
            out_cols.append(col_idx[i])
        else:
            col_idx[i] = row_idx[i]  # contract row and column index
    reduced = np.einsum(tensor, row_idx + col_idx, out_rows + out_cols)
    d = int(np.prod([dims.dims[i] for i in range(k) if dims.labels[i] in keep]))
    return reduced.reshape(d, d)


def embed_operator(op, dims: DimensionSpec, label: str) -> np.ndarray:
    """``I ⊗ ... ⊗ op ⊗ ... ⊗ I`` with ``op`` on subsystem ``label``.

    ``op`` may be rectangular (an isometry into a bigger factor); the caller
    is responsible for updating the DimensionSpec in that case.
    """
    op = as_matrix(op)
    idx = dims.index(label)
    if op.shape[1] != dims.dims[idx]:
        raise DimensionError(
            f"operator acts on dimension {op.shape[1]}, subsystem {label!r} has {dims.dims[idx]}")
    left = int(np.prod(dims.dims[:idx]))
    right = int(np.prod(dims.dims[idx + 1:]))
    return kron_all(np.eye(left), op, np.eye(right))


def _jacobi_sweep(a: np.ndarray, v: np.ndarray | None) -> None:
    n = a.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            mag = abs(apq)
            if mag < 1e-300:
                continue
            phase = apq / mag
            tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
            t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
            j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
            cols = a[:, [p, q]] @ j
            a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
            rows = j.conj().T @ a[[p, q], :]
            a[p, :], a[q, :] = rows[0], rows[1]
            a[p, q] = a[q, p] = 0.0
            if v is not None:
                vc = v[:, [p, q]] @ j
                v[:, p], v[:, q] = vc[:, 0], vc[:, 1]


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigh(m, tol: float = HERMITIAN_TOL) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors (columns) by cyclic Jacobi rotations."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"eigenproblem needs a square matrix, got {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max |m - m^H| = {defect:.3e})")
    a = (m + m.conj().T) / 2.0
    v = np.eye(a.shape[0], dtype=complex)
    for _ in range(MAX_JACOBI_SWEEPS):
        if _off_norm(a) < JACOBI_OFF_TOL:
            break
        _jacobi_sweep(a, v)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    return hermitian_eigh(m, tol)[0]


def hermitian_function(m, fn, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum."""
    w, v = hermitian_eigh(m, tol)
    return (v * fn(w)) @ v.conj().T


def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    rows, cols = m.shape
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_json(data: dict) -> np.ndarray:
    rows, cols = int(data["rows"]), int(data["cols"])
    entries = data["entries"]
    if rows < 1 or cols < 1:
        raise DimensionError("matrix dimensions must be positive")
    if len(entries) != rows * cols:
        raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return as_matrix(flat.reshape(rows, cols))
