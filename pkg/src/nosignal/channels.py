"""Local operations in Kraus form, their validation, and the Greenberger map.

A deterministic channel satisfies ``sum_i A_i^H A_i = I``; a probabilistic one
only ``sum_i A_i^H A_i <= I`` and succeeds with probability
``p = sum_i Tr(A_i^H A_i rho)``.  Complete positivity is decided through the
Choi matrix alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple, Union

import numpy as np

from .states import (
    DensityOperator,
    SQRT1_2,
    ket,
)
from .tensor import (
    DimensionError,
    DimensionSpec,
    adjoint,
    as_matrix,
    embed_operator,
    hermitian_eigenvalues,
    hermitian_function,
    matrix_from_json,
    matrix_to_json,
    max_abs,
)

DETERMINISTIC = "deterministic"
PROBABILISTIC = "probabilistic"
KINDS = (DETERMINISTIC, PROBABILISTIC)

COMPLETENESS_TOL = 1e-9
CP_TOL = 1e-9
MIN_SUCCESS_PROBABILITY = 1e-12


class ChannelError(ValueError):
    pass


class ImpossibleOutcomeError(ChannelError):
    """The selected outcome has (numerically) zero probability."""


@dataclass(frozen=True)
class KrausChannel:
    """Kraus operators (each ``output_dim x input_dim``) plus a kind tag.

    Construction only checks shapes. Whether the completeness relation of the
    declared kind holds is reported by :func:`validate_channel` and enforced
    when the channel is applied.
    """

    operators: Tuple[np.ndarray, ...]
    kind: str = DETERMINISTIC
    input_dim: int | None = None
    output_dim: int | None = None

    def __post_init__(self):
        ops = tuple(as_matrix(a) for a in self.operators)
        if not ops:
            raise ChannelError("a channel needs at least one Kraus operator")
        if self.kind not in KINDS:
            raise ChannelError(f"unknown channel kind {self.kind!r}")
        shape = ops[0].shape
        for a in ops:
            if a.shape != shape:
                raise DimensionError("Kraus operators must share one shape")
            a.setflags(write=False)
        out_dim, in_dim = shape
        if self.input_dim is not None and self.input_dim != in_dim:
            raise DimensionError(f"declared input_dim {self.input_dim} but operators take {in_dim}")
        if self.output_dim is not None and self.output_dim != out_dim:
            raise DimensionError(f"declared output_dim {self.output_dim} but operators give {out_dim}")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "input_dim", in_dim)
        object.__setattr__(self, "output_dim", out_dim)

    def completeness(self) -> np.ndarray:
        return sum(adjoint(a) @ a for a in self.operators)

    def __call__(self, x) -> np.ndarray:
        x = as_matrix(x)
        return sum(a @ x @ adjoint(a) for a in self.operators)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "input_dim": self.input_dim,
            "output_dim": self.output_dim,
            "operators": [matrix_to_json(a) for a in self.operators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "KrausChannel":
        ops = [matrix_from_json(m) for m in data["operators"]]
        return cls(tuple(ops), data.get("kind", DETERMINISTIC),
                   data.get("input_dim"), data.get("output_dim"))


@dataclass(frozen=True)
class ChannelReport:
    kind: str
    trace_preserving: bool
    sub_normalized: bool
    completely_positive: bool
    min_choi_eigenvalue: float
    completeness_residual: float
    completeness_eigenvalues: Tuple[float, ...] = field(default=())

    @property
    def passes(self) -> bool:
        """Whether the channel is a legitimate operation of its declared kind."""
        if self.kind == DETERMINISTIC:
            return self.trace_preserving and self.completely_positive
        return self.sub_normalized and self.completely_positive

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "trace_preserving": self.trace_preserving,
            "sub_normalized": self.sub_normalized,
            "completely_positive": self.completely_positive,
            "min_choi_eigenvalue": self.min_choi_eigenvalue,
            "completeness_residual": self.completeness_residual,
            "completeness_eigenvalues": list(self.completeness_eigenvalues),
            "pass": self.passes,
        }


LinearMap = Union[KrausChannel, Sequence[np.ndarray], Callable[[np.ndarray], np.ndarray]]


def _as_callable(linear_map: LinearMap, input_dim: int | None):
    if isinstance(linear_map, KrausChannel):
        return linear_map, linear_map.input_dim
    if callable(linear_map):
        if input_dim is None:
            raise ChannelError("input_dim is required for a map given as a function")
        return linear_map, input_dim
    ch = KrausChannel(tuple(linear_map))
    return ch, ch.input_dim


def choi_matrix(linear_map: LinearMap, input_dim: int | None = None) -> np.ndarray:
    """``sum_jk E_jk (x) map(E_jk)`` over the input matrix units."""
    fn, n = _as_callable(linear_map, input_dim)
    blocks = None
    for j in range(n):
        for k in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[j, k] = 1.0
            term = np.kron(unit, as_matrix(fn(unit)))
            blocks = term if blocks is None else blocks + term
    return blocks


def is_completely_positive(linear_map: LinearMap, input_dim: int | None = None) -> Tuple[bool, float]:
    lowest = float(hermitian_eigenvalues(choi_matrix(linear_map, input_dim))[0])
    return lowest >= -CP_TOL, lowest


def validate_channel(ch: KrausChannel) -> ChannelReport:
    s = ch.completeness()
    eye = np.eye(ch.input_dim)
    eigs = hermitian_eigenvalues(s)
    cp, lowest = is_completely_positive(ch)
    return ChannelReport(
        kind=ch.kind,
        trace_preserving=max_abs(s - eye) <= COMPLETENESS_TOL,
        sub_normalized=bool(eigs[-1] <= 1.0 + COMPLETENESS_TOL),
        completely_positive=cp,
        min_choi_eigenvalue=lowest,
        completeness_residual=max_abs(s - eye),
        completeness_eigenvalues=tuple(float(w) for w in eigs),
    )


def _local_kraus_sum(ch: KrausChannel, rho: DensityOperator, party: str):
    idx = rho.dims.index(party)
    if rho.dims.dims[idx] != ch.input_dim:
        raise DimensionError(
            f"channel takes dimension {ch.input_dim}, subsystem {party!r} has {rho.dims.dims[idx]}")
    out = None
    for a in ch.operators:
        big = embed_operator(a, rho.dims, party)
        term = big @ rho.matrix @ adjoint(big)
        out = term if out is None else out + term
    parts = list(rho.dims.parts)
    parts[idx] = (party, ch.output_dim)
    return DimensionSpec(tuple(parts)), out


def apply_deterministic(ch: KrausChannel, rho: DensityOperator, party: str) -> DensityOperator:
    """``sum_i (I (x) A_i) rho (I (x) A_i)^H`` with the identity on every other party."""
    if ch.kind != DETERMINISTIC:
        raise ChannelError(f"apply_deterministic needs a deterministic channel, got {ch.kind}")
    residual = max_abs(ch.completeness() - np.eye(ch.input_dim))
    if residual > COMPLETENESS_TOL:
        raise ChannelError(f"Kraus operators are not complete (residual {residual:.3e})")
    dims, out = _local_kraus_sum(ch, rho, party)
    return DensityOperator(dims, out)


def apply_selective(ch: KrausChannel, rho: DensityOperator, party: str) -> Tuple[DensityOperator, float]:
    """Conditional state and success probability of a probabilistic local operation."""
    if ch.kind != PROBABILISTIC:
        raise ChannelError(f"apply_selective needs a probabilistic channel, got {ch.kind}")
    top = hermitian_eigenvalues(ch.completeness())[-1]
    if top > 1.0 + COMPLETENESS_TOL:
        raise ChannelError(f"Kraus operators exceed the identity (eigenvalue {top:.6g})")
    dims, out = _local_kraus_sum(ch, rho, party)
    p = float(np.trace(out).real)
    if p <= MIN_SUCCESS_PROBABILITY:
        raise ImpossibleOutcomeError(f"success probability {p:.3e} vanishes")
    return DensityOperator(dims, out / p), p


def projective_channel(projectors: Sequence, kind: str = DETERMINISTIC) -> KrausChannel:
    return KrausChannel(tuple(as_matrix(p) for p in projectors), kind)


@dataclass(frozen=True)
class GreenbergerMap:
    """``T|u> = |u>``, ``T|v> = e^{i gamma}|u>`` as a raw 2x2 operator in the {u, v} basis."""

    gamma: float
    matrix: np.ndarray

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=complex)

    def as_channel(self, kind: str = DETERMINISTIC) -> KrausChannel:
        """The single-operator 'channel' {T}; it fails validation as deterministic."""
        return KrausChannel((self.matrix,), kind)


def greenberger_T(gamma: float) -> GreenbergerMap:
    u, v = ket(2, 0), ket(2, 1)
    m = np.outer(u, u) + np.exp(1j * gamma) * np.outer(u, v)
    return GreenbergerMap(float(gamma), m)


def spin_T(gamma: float) -> np.ndarray:
    """Spin analogue acting on particle 2: down -> down, up -> e^{i gamma} down."""
    up, down = ket(2, 0), ket(2, 1)
    return np.outer(down, down) + np.exp(1j * gamma) * np.outer(down, up)


def complete_to_deterministic(k) -> KrausChannel:
    """Complete a sub-normalized Kraus operator ``k`` with ``B = sqrt(I - k^H k)``."""
    k = as_matrix(k)
    kk = adjoint(k) @ k
    top = hermitian_eigenvalues(kk)[-1]
    if top > 1.0 + COMPLETENESS_TOL:
        raise ChannelError(f"k^H k has eigenvalue {top:.6g} > 1; rescale k first")
    rest = np.eye(k.shape[1]) - kk

    def clamped_sqrt(w):
        # rounding can push zero eigenvalues slightly negative
        return np.sqrt(np.where(w < 0, 0.0, w))

    b = hermitian_function(rest, clamped_sqrt)
    return KrausChannel((k, b), DETERMINISTIC)


def normalized_image(op, rho) -> np.ndarray:
    """``T rho T^H / Tr(T rho T^H)``: the nonlinear rule that keeps T 'deterministic'."""
    op = op.matrix if isinstance(op, GreenbergerMap) else as_matrix(op)
    m = rho.matrix if isinstance(rho, DensityOperator) else as_matrix(rho)
    out = op @ m @ adjoint(op)
    tr = np.trace(out).real
    if tr <= MIN_SUCCESS_PROBABILITY:
        raise ChannelError(f"operator annihilates the input (trace {tr:.3e})")
    return out / tr


def linearity_test(op, rho1, rho2, w: float) -> float:
    """Max-abs defect of the normalized rule from mixing linearity at weight ``w``."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"mixing weight {w} outside [0, 1]")
    m1 = rho1.matrix if isinstance(rho1, DensityOperator) else as_matrix(rho1)
    m2 = rho2.matrix if isinstance(rho2, DensityOperator) else as_matrix(rho2)
    mixed = normalized_image(op, w * m1 + (1 - w) * m2)
    split = w * normalized_image(op, m1) + (1 - w) * normalized_image(op, m2)
    return max_abs(mixed - split)


def linearity_witness(gamma: float = 0.0):
    """A pair exposing the nonlinearity of the normalized Greenberger rule.

    On the shifter alone every input is sent to |u><u|, so no single-system
    pair can show a defect. With a bystander qubit X the inputs are
    |0>|u> and |1>(|u>+|v>)/sqrt(2), mixed with w = 1/2; for gamma = 0 the
    normalized images are unequally weighted and the defect is 1/6.

    Returns ``(operator, rho1, rho2, w)`` with ``operator = I (x) T(gamma)``.
    """
    dims = DimensionSpec.of(("X", 2), ("shifter", 2))
    psi1 = np.kron(ket(2, 0), ket(2, 0))
    psi2 = np.kron(ket(2, 1), (ket(2, 0) + ket(2, 1)) * SQRT1_2)
    rho1 = DensityOperator(dims, np.outer(psi1, psi1.conj()))
    rho2 = DensityOperator(dims, np.outer(psi2, psi2.conj()))
    op = np.kron(np.eye(2), greenberger_T(gamma).matrix)
    return op, rho1, rho2, 0.5
