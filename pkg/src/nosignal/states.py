"""Pure states, density operators, and the concrete states of the signaling proposals.

Basis orderings are fixed package-wide (index 0 first):

=============  ==========
factor         basis
=============  ==========
photon-1 path  a, b   (source side) / h, g   (detector side)
photon-2 path  a', b' (source side) / c', d' (detector side)
shifter        u, v   (the cat states; |A>, |B> = (u +- v)/sqrt(2))
spin           up, down
SG position    down-path, up-path
=============  ==========
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .tensor import (
    DimensionError,
    DimensionSpec,
    as_matrix,
    embed_operator,
    hermitian_eigenvalues,
    hermiticity_defect,
    matrix_to_json,
    max_abs,
    partial_trace,
)

NORM_TOL = 1e-10
PSD_TOL = 1e-9
PROJECTOR_TOL = 1e-9

SQRT1_2 = 1.0 / np.sqrt(2.0)

SOURCE_DIMS = DimensionSpec.of(("photon1", 2), ("photon2", 2))
PREDETECTOR_DIMS = DimensionSpec.of(("photon1", 2), ("photon2", 2), ("shifter", 2))
SPIN_DIMS = DimensionSpec.of(("spin1", 2), ("spin2", 2))

UP, DOWN = 0, 1
H, G = 0, 1
C, D = 0, 1
U, V = 0, 1


class StateError(ValueError):
    pass


def ket(dim: int, index: int) -> np.ndarray:
    out = np.zeros(dim, dtype=complex)
    out[index] = 1.0
    return out


@dataclass(frozen=True)
class PureState:
    dims: DimensionSpec
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.dims.total:
            raise DimensionError(
                f"{amps.size} amplitudes for total dimension {self.dims.total}")
        if not np.all(np.isfinite(amps)):
            raise StateError("amplitudes contain NaN or Inf")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise StateError(f"state is not normalized (squared norm {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, dims: DimensionSpec, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm < 1e-12:
            raise StateError("cannot normalize the null vector")
        return cls(dims, amps / norm)

    def to_json(self) -> dict:
        return {
            "dims": self.dims.to_json(),
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PureState":
        dims = DimensionSpec.from_json(data["dims"])
        return cls(dims, [complex(re, im) for re, im in data["amplitudes"]])


@dataclass(frozen=True)
class DensityOperator:
    dims: DimensionSpec
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        n = self.dims.total
        if m.shape != (n, n):
            raise DimensionError(f"matrix shape {m.shape} does not match dimension {n}")
        defect = hermiticity_defect(m)
        if defect > NORM_TOL:
            raise StateError(f"density operator not Hermitian (defect {defect:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) > NORM_TOL:
            raise StateError(f"density operator trace is {tr!r}, expected 1")
        lowest = hermitian_eigenvalues(m)[0]
        if lowest < -PSD_TOL:
            raise StateError(f"density operator has negative eigenvalue {lowest:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def rank(self, tol: float = 1e-9) -> int:
        return int(np.sum(self.eigenvalues() > tol))

    def to_json(self) -> dict:
        return {"dims": self.dims.to_json(), "matrix": matrix_to_json(self.matrix)}


def pure_to_density(s: PureState) -> DensityOperator:
    return DensityOperator(s.dims, np.outer(s.amplitudes, s.amplitudes.conj()))


def reduced_state(rho: DensityOperator | PureState, keep: Iterable[str]) -> DensityOperator:
    if isinstance(rho, PureState):
        rho = pure_to_density(rho)
    keep = list(keep)
    sub = rho.dims.select(keep)
    return DensityOperator(sub, partial_trace(rho.matrix, rho.dims, keep))


def mixture(weights: Sequence[float], states: Sequence[DensityOperator]) -> DensityOperator:
    dims = states[0].dims
    m = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityOperator(dims, m)


def check_projectors(projectors: Sequence[np.ndarray], dim: int, tol: float = PROJECTOR_TOL) -> None:
    """Raise unless ``projectors`` are orthogonal Hermitian idempotents resolving the identity."""
    if not projectors:
        raise StateError("empty projector set")
    total = np.zeros((dim, dim), dtype=complex)
    for i, p in enumerate(projectors):
        if p.shape != (dim, dim):
            raise DimensionError(f"projector {i} has shape {p.shape}, expected {(dim, dim)}")
        if hermiticity_defect(p) > tol or max_abs(p @ p - p) > tol:
            raise StateError(f"element {i} is not a Hermitian projector")
        for j in range(i):
            if max_abs(p @ projectors[j]) > tol:
                raise StateError(f"projectors {j} and {i} are not orthogonal")
        total += p
    if max_abs(total - np.eye(dim)) > tol:
        raise StateError("projectors do not sum to the identity")


def measurement_probabilities(rho: DensityOperator, projectors: Sequence) -> np.ndarray:
    """Born probabilities ``Tr(P_i rho)`` for a complete orthogonal projector set."""
    projectors = [as_matrix(p) for p in projectors]
    check_projectors(projectors, rho.dims.total)
    probs = np.array([np.trace(p @ rho.matrix).real for p in projectors])
    if np.any(probs < -PROJECTOR_TOL) or np.any(probs > 1 + PROJECTOR_TOL):
        raise StateError(f"probabilities out of range: {probs}")
    return probs


def local_projectors(projectors: Sequence, dims: DimensionSpec, label: str) -> list:
    """Lift single-party projectors to the full space of ``dims``."""
    return [embed_operator(p, dims, label) for p in projectors]


def phase_aligned_distance(x, y) -> float:
    """Max-abs difference between two vectors after removing the best global phase."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    if x.shape != y.shape:
        raise DimensionError(f"vector lengths differ: {x.size} vs {y.size}")
    overlap = np.vdot(y, x)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return max_abs(x - phase * y)


# -- spin operators -----------------------------------------------------------

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def sigma_dot(d) -> np.ndarray:
    dx, dy, dz = d
    return dx * PAULI_X + dy * PAULI_Y + dz * PAULI_Z


def spin_projectors(d) -> list:
    """Eigenprojectors of ``sigma . d`` ordered as [+1, -1]; ``d`` must be a unit vector."""
    d = np.asarray(d, dtype=float)
    if abs(np.linalg.norm(d) - 1.0) > 1e-12:
        raise StateError("spin direction must be a unit vector")
    s = sigma_dot(d)
    eye = np.eye(2, dtype=complex)
    return [(eye + s) / 2.0, (eye - s) / 2.0]


def equatorial_direction(gamma: float) -> tuple:
    return (np.cos(gamma), np.sin(gamma), 0.0)


# -- interferometer and spin states ----------------------------------------------

def singlet() -> PureState:
    amps = np.zeros(4, dtype=complex)
    amps[2 * UP + DOWN] = SQRT1_2
    amps[2 * DOWN + UP] = -SQRT1_2
    return PureState(SPIN_DIMS, amps)


def greenberger_initial() -> PureState:
    """(|a>|a'> + |b>|b'>)/sqrt(2) in the basis {aa', ab', ba', bb'}."""
    return PureState(SOURCE_DIMS, [SQRT1_2, 0, 0, SQRT1_2])


def shifter_u() -> np.ndarray:
    return ket(2, U)


def shifter_v() -> np.ndarray:
    return ket(2, V)


def shifter_inserted() -> np.ndarray:
    """|A> = (|u> + |v>)/sqrt(2)."""
    return (ket(2, U) + ket(2, V)) * SQRT1_2


def shifter_removed() -> np.ndarray:
    """|B> = (|u> - |v>)/sqrt(2)."""
    return (ket(2, U) - ket(2, V)) * SQRT1_2


def _basis_index(*indices: int, dims=(2, 2, 2)) -> int:
    return int(np.ravel_multi_index(indices, dims))


def greenberger_predetector(alpha: float, beta: float) -> PureState:
    """Photon-photon-shifter state just before the detectors in closed form."""
    amps = np.zeros(8, dtype=complex)
    eu, ev = np.exp(1j * beta) / 2, np.exp(-1j * beta) / 2
    amps[_basis_index(H, D, U)] = -np.exp(1j * alpha) * eu
    amps[_basis_index(G, C, U)] = np.exp(-1j * alpha) * eu
    amps[_basis_index(G, C, V)] = np.exp(1j * alpha) * ev
    amps[_basis_index(H, D, V)] = -np.exp(-1j * alpha) * ev
    return PureState(PREDETECTOR_DIMS, amps)


def greenberger_final_amplitudes(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Unnormalized amplitudes of the post-T state in closed form (shifter left in |u>)."""
    amps = np.zeros(8, dtype=complex)
    pref = np.exp(1j * gamma / 2)
    amps[_basis_index(H, D, U)] = -pref * np.cos(alpha + beta - gamma / 2)
    amps[_basis_index(G, C, U)] = pref * np.cos(beta - alpha - gamma / 2)
    return amps


def bipartite_schmidt_state(a1: complex, a2: complex, gamma: float = 0.0,
                            collapsed: bool = False, eta: float = 0.0) -> PureState:
    """``a1|phi1>|chi1> + a2|phi2>|chi2>`` on X (2) x Y (2) with computational bases.

    With ``collapsed=True`` returns ``e^{i eta}(a1|phi1> + e^{i gamma} a2|phi2>)|chi2>``,
    the image demanded of a would-be signaling map.
    """
    dims = DimensionSpec.of(("X", 2), ("Y", 2))
    if collapsed:
        x_part = np.array([a1, np.exp(1j * gamma) * a2], dtype=complex)
        amps = np.exp(1j * eta) * np.kron(x_part, ket(2, 1))
    else:
        amps = a1 * np.kron(ket(2, 0), ket(2, 0)) + a2 * np.kron(ket(2, 1), ket(2, 1))
    return PureState(dims, amps)


def epr_factorized(gamma: float) -> PureState:
    """(|up> - e^{i gamma}|down>)/sqrt(2) (x) |down>, the state Bob's T would produce."""
    spin1 = (ket(2, UP) - np.exp(1j * gamma) * ket(2, DOWN)) * SQRT1_2
    return PureState(SPIN_DIMS, np.kron(spin1, ket(2, DOWN)))
