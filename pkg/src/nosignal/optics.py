"""Path-qubit linear optics for the two-photon / phase-shifter setup.

Each photon is a qubit of path. Mode names index into the photon factors::

    photon1: a, h -> 0    b, g -> 1
    photon2: a', c' -> 0  b', d' -> 1

Source-side and detector-side names share indices; a beam splitter relabels
a/b as h/g. The shifter factor is stored in the {u, v} basis, while the
conditional phase couples to its position states |A> (inserted) and |B>.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .states import (
    PREDETECTOR_DIMS,
    PureState,
    greenberger_initial,
    shifter_inserted,
)
from .tensor import DimensionError, DimensionSpec, embed_operator, max_abs

UNITARY_TOL = 1e-12
NORM_TOL = 1e-10

MODES = {
    "a": ("photon1", 0), "h": ("photon1", 0),
    "b": ("photon1", 1), "g": ("photon1", 1),
    "a'": ("photon2", 0), "c'": ("photon2", 0),
    "b'": ("photon2", 1), "d'": ("photon2", 1),
}
SHIFTER = "shifter"

BS_MATRIX = np.array([[1, 1j], [1j, 1]], dtype=complex) / np.sqrt(2.0)


class NonUnitaryError(ValueError):
    pass


def _mode(name: str) -> Tuple[str, int]:
    try:
        return MODES[name]
    except KeyError:
        raise DimensionError(f"unknown optical mode {name!r}") from None


@dataclass(frozen=True)
class BeamSplitter:
    """50/50 splitter, pi/2 phase on reflection: first mode -> (first + i second)/sqrt(2)."""

    modes: Tuple[str, str] = ("a", "b")

    @property
    def matrix(self) -> np.ndarray:
        return BS_MATRIX.copy()

    @property
    def factor(self) -> str:
        (f0, i0), (f1, i1) = _mode(self.modes[0]), _mode(self.modes[1])
        if f0 != f1 or i0 == i1:
            raise DimensionError(f"beam splitter modes {self.modes} must be the two paths of one photon")
        return f0

    def operator(self, dims: DimensionSpec) -> np.ndarray:
        # BS_MATRIX is symmetric under relabelling the pair, so mode order is immaterial
        return embed_operator(self.matrix, dims, self.factor)


@dataclass(frozen=True)
class PhasePlate:
    """Multiplies the amplitude of one mode by ``e^{i phase}``."""

    phase: float
    mode: str = "b"

    @property
    def matrix(self) -> np.ndarray:
        _, idx = _mode(self.mode)
        m = np.eye(2, dtype=complex)
        m[idx, idx] = np.exp(1j * self.phase)
        return m

    def operator(self, dims: DimensionSpec) -> np.ndarray:
        return embed_operator(self.matrix, dims, _mode(self.mode)[0])


@dataclass(frozen=True)
class ConditionalPhase:
    """Phase on a photon mode applied only when the shifter is inserted (|A>)."""

    mode: str
    phase: float = np.pi

    def operator(self, dims: DimensionSpec) -> np.ndarray:
        factor, idx = _mode(self.mode)
        mode_proj = np.zeros((2, 2), dtype=complex)
        mode_proj[idx, idx] = 1.0
        a = shifter_inserted()
        inserted_proj = np.outer(a, a.conj())
        # (e^{i phi} - 1) |mode><mode| (x) |A><A|, embedded factor by factor
        coupling = embed_operator(mode_proj, dims, factor) @ embed_operator(inserted_proj, dims, SHIFTER)
        return np.eye(dims.total) + (np.exp(1j * self.phase) - 1.0) * coupling


@dataclass(frozen=True)
class ShifterHamiltonian:
    """Free evolution of the shifter; |u>, |v> accrue opposite phases."""

    energy_split: float
    time: float = 1.0

    def evolution(self) -> np.ndarray:
        beta = shifter_phases(self)
        return np.diag([np.exp(1j * beta), np.exp(-1j * beta)])

    def operator(self, dims: DimensionSpec) -> np.ndarray:
        return embed_operator(self.evolution(), dims, SHIFTER)


Element = Union[BeamSplitter, PhasePlate, ConditionalPhase, ShifterHamiltonian]


@dataclass(frozen=True)
class OpticalNetwork:
    elements: Tuple[Element, ...] = ()

    def to_json(self) -> list:
        return [element_to_json(e) for e in self.elements]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "OpticalNetwork":
        return cls(tuple(element_from_json(d) for d in data))


def beam_splitter(modes: Tuple[str, str] = ("a", "b")) -> BeamSplitter:
    return BeamSplitter(tuple(modes))


def shifter_phases(h: ShifterHamiltonian) -> float:
    return h.energy_split * h.time


def propagate_network(net: OpticalNetwork, s: PureState) -> PureState:
    psi = np.array(s.amplitudes)
    for element in net.elements:
        op = element.operator(s.dims)
        if max_abs(op.conj().T @ op - np.eye(op.shape[0])) > UNITARY_TOL:
            raise NonUnitaryError(f"element {element!r} is not unitary")
        psi = op @ psi
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NonUnitaryError(f"propagation changed the norm to {norm2!r}")
    return PureState(s.dims, psi)


def reference_input() -> PureState:
    """Source pair with the shifter inserted, |A> = (|u> + |v>)/sqrt(2)."""
    amps = np.kron(greenberger_initial().amplitudes, shifter_inserted())
    return PureState(PREDETECTOR_DIMS, amps)


def reference_network(alpha: float, beta: float) -> OpticalNetwork:
    """Network whose output is the pre-detector state up to a global phase (-i).

    The shifter evolves for phase ``alpha``, both photons cross a splitter,
    photon 1's g output passes the shifter, then the shifter evolves for
    phase ``beta`` while the photons fly to the detectors.
    """
    return OpticalNetwork((
        ShifterHamiltonian(alpha),
        BeamSplitter(("a", "b")),
        BeamSplitter(("a'", "b'")),
        ConditionalPhase("g", np.pi),
        ShifterHamiltonian(beta),
    ))


def element_to_json(e: Element) -> dict:
    if isinstance(e, BeamSplitter):
        return {"element": "bs", "modes": list(e.modes)}
    if isinstance(e, PhasePlate):
        return {"element": "phase", "modes": [e.mode], "phase": e.phase}
    if isinstance(e, ConditionalPhase):
        return {"element": "cond_phase", "modes": [e.mode], "phase": e.phase}
    if isinstance(e, ShifterHamiltonian):
        return {"element": "shifter", "modes": [], "phase": shifter_phases(e)}
    raise TypeError(f"not a network element: {e!r}")


def element_from_json(d: dict) -> Element:
    kind = d.get("element")
    modes = d.get("modes", [])
    if kind == "bs":
        if len(modes) != 2:
            raise DimensionError("a beam splitter needs exactly two modes")
        return BeamSplitter(tuple(modes))
    if kind == "phase":
        return PhasePlate(float(d["phase"]), modes[0])
    if kind == "cond_phase":
        return ConditionalPhase(modes[0], float(d.get("phase", np.pi)))
    if kind == "shifter":
        return ShifterHamiltonian(float(d["phase"]))
    raise ValueError(f"unknown network element {kind!r}")
