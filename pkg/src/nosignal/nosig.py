"""Executable no-signaling checks.

Deterministic local operations leave the other party's reduced state alone,
so a transform that changes that reduced state cannot be one of them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import (
    DETERMINISTIC,
    PROBABILISTIC,
    KrausChannel,
    apply_deterministic,
    apply_selective,
    ImpossibleOutcomeError,
)
from .states import (
    DensityOperator,
    PureState,
    bipartite_schmidt_state,
    pure_to_density,
    reduced_state,
)
from .tensor import (
    DimensionError,
    DimensionSpec,
    adjoint,
    as_matrix,
    hermitian_function,
    max_abs,
    partial_trace,
)

ACHIEVABLE_TOL = 1e-9
MAX_KRAUS_RANK = 4


@dataclass(frozen=True)
class TargetTransform:
    """A requested pure-state transformation ``input -> output`` acting on party ``party``."""

    input: PureState
    output: PureState
    party: str = "Y"

    def __post_init__(self):
        if self.input.dims != self.output.dims:
            raise DimensionError(
                f"input dims {self.input.dims.parts} differ from output dims {self.output.dims.parts}")
        self.input.dims.index(self.party)

    @property
    def observers(self) -> list:
        return [label for label in self.input.dims.labels if label != self.party]


@dataclass(frozen=True)
class ObstructionReport:
    marginal_distance: float
    achievable_deterministically: bool
    note: str

    def to_json(self) -> dict:
        return {
            "marginal_distance": self.marginal_distance,
            "achievable_deterministically": self.achievable_deterministically,
            "note": self.note,
        }


def greenberger_target(a1: complex, a2: complex, gamma: float, eta: float = 0.0) -> TargetTransform:
    """``a1|11> + a2|22>  ->  e^{i eta}(a1|1> + e^{i gamma} a2|2>)|2>`` on X (x) Y."""
    return TargetTransform(
        bipartite_schmidt_state(a1, a2),
        bipartite_schmidt_state(a1, a2, gamma=gamma, collapsed=True, eta=eta),
        party="Y",
    )


def marginal_obstruction(t: TargetTransform) -> ObstructionReport:
    before = reduced_state(t.input, t.observers)
    after = reduced_state(t.output, t.observers)
    dist = max_abs(before.matrix - after.matrix)
    ok = dist <= ACHIEVABLE_TOL
    if ok:
        note = "observer marginal unchanged; a deterministic local map is not excluded"
    else:
        note = (f"observer marginal changes (rank {before.rank()} -> {after.rank()}, "
                f"distance {dist:.3g}); no completely positive trace-preserving map on "
                f"{t.party!r} can do this")
    return ObstructionReport(dist, ok, note)


def random_pure_state(rng: np.random.Generator, dims: DimensionSpec) -> PureState:
    n = dims.total
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PureState.normalized(dims, amps)


def random_channel(rng: np.random.Generator, dim: int, max_rank: int = MAX_KRAUS_RANK) -> KrausChannel:
    """Gaussian Kraus operators made complete by right-multiplying (sum A^H A)^(-1/2)."""
    rank = int(rng.integers(1, max_rank + 1))
    ops = [rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)) for _ in range(rank)]
    s = sum(adjoint(a) @ a for a in ops)
    inv_sqrt = hermitian_function(s, lambda w: 1.0 / np.sqrt(w))
    return KrausChannel(tuple(a @ inv_sqrt for a in ops), DETERMINISTIC)


def marginal_shift(ch: KrausChannel, rho: DensityOperator, party: str) -> float:
    observers = [label for label in rho.dims.labels if label != party]
    before = partial_trace(rho.matrix, rho.dims, observers)
    after_rho = apply_deterministic(ch, rho, party)
    after = partial_trace(after_rho.matrix, after_rho.dims, observers)
    return max_abs(before - after)


def fuzz_no_signaling(seed: int, trials: int, dims: DimensionSpec,
                      party: str | None = None, identity: bool = False) -> float:
    """Worst observer-marginal shift over random states and random local channels.

    Trial ``i`` draws from ``default_rng([seed, i])``, so the result depends
    only on ``(seed, trials, dims)``. ``party`` defaults to the last subsystem.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    party = dims.labels[-1] if party is None else party
    dim = dims.dim(party)
    worst = 0.0
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        rho = pure_to_density(random_pure_state(rng, dims))
        if identity:
            ch = KrausChannel((np.eye(dim),), DETERMINISTIC)
        else:
            ch = random_channel(rng, dim)
        worst = max(worst, marginal_shift(ch, rho, party))
    return worst


def fuzz_report(seed: int, trials: int, dims: DimensionSpec, tolerance: float = ACHIEVABLE_TOL) -> dict:
    worst = fuzz_no_signaling(seed, trials, dims)
    return {
        "scenario": "fuzz",
        "params": {"seed": seed, "trials": trials, "dims": dims.to_json(), "tolerance": tolerance},
        "worst_distance": worst,
        "pass": worst <= tolerance,
    }


def selective_mixture_distance(rho: DensityOperator, outcomes: Sequence, party: str) -> float:
    """Distance between the observers' marginal and the p-weighted conditional marginals.

    ``outcomes`` is a list of Kraus-operator groups, one per outcome, that
    together form a complete measurement on ``party``. Zero-probability
    outcomes contribute nothing.
    """
    observers = [label for label in rho.dims.labels if label != party]
    before = partial_trace(rho.matrix, rho.dims, observers)
    averaged = np.zeros_like(before)
    for group in outcomes:
        ops = (as_matrix(group),) if np.ndim(group) == 2 else tuple(as_matrix(a) for a in group)
        try:
            cond, p = apply_selective(KrausChannel(ops, PROBABILISTIC), rho, party)
        except ImpossibleOutcomeError:
            continue
        averaged = averaged + p * partial_trace(cond.matrix, cond.dims, observers)
    return max_abs(before - averaged)


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2)
