import json

import numpy as np
import pytest

from nosignal.states import (
    SPIN_DIMS,
    DensityOperator,
    PureState,
    StateError,
    bipartite_schmidt_state,
    epr_factorized,
    equatorial_direction,
    greenberger_initial,
    greenberger_predetector,
    measurement_probabilities,
    mixture,
    phase_aligned_distance,
    pure_to_density,
    reduced_state,
    singlet,
    spin_projectors,
)
from nosignal.tensor import DimensionSpec

R = 1 / np.sqrt(2)
QUBIT = DimensionSpec.of(("q", 2))


def test_pure_to_density_basis_and_plus():
    np.testing.assert_array_equal(pure_to_density(PureState(QUBIT, [1, 0])).matrix, np.diag([1, 0]))
    plus = pure_to_density(PureState(QUBIT, [R, R])).matrix
    np.testing.assert_allclose(plus, np.full((2, 2), 0.5), atol=1e-15)


def test_singlet_density_by_hand():
    # basis uu, ud, du, dd; only the ud/du block is populated
    expected = np.zeros((4, 4))
    expected[1, 1] = expected[2, 2] = 0.5
    expected[1, 2] = expected[2, 1] = -0.5
    np.testing.assert_allclose(pure_to_density(singlet()).matrix, expected, atol=1e-15)


def test_singlet_amplitudes_and_marginals():
    s = singlet()
    np.testing.assert_allclose(s.amplitudes, [0, R, -R, 0], atol=1e-15)
    assert abs(np.vdot(s.amplitudes, s.amplitudes) - 1) < 1e-15
    for side in ("spin1", "spin2"):
        np.testing.assert_allclose(reduced_state(s, [side]).matrix, np.eye(2) / 2, atol=1e-15)


def test_greenberger_initial():
    s = greenberger_initial()
    np.testing.assert_allclose(s.amplitudes, [R, 0, 0, R], atol=1e-15)
    np.testing.assert_allclose(reduced_state(s, ["photon1"]).matrix, np.eye(2) / 2, atol=1e-15)


def test_predetector_at_zero_phases():
    amps = greenberger_predetector(0, 0).amplitudes
    # index = 4*photon1 + 2*photon2 + shifter with h=0, g=1, c'=0, d'=1, u=0, v=1
    expected = np.zeros(8)
    expected[0b010] = -0.5  # h d' u
    expected[0b100] = 0.5   # g c' u
    expected[0b101] = 0.5   # g c' v
    expected[0b011] = -0.5  # h d' v
    np.testing.assert_allclose(amps, expected, atol=1e-15)


@pytest.mark.parametrize("alpha,beta", [(0.1, 0.2), (1.3, -2.0), (np.pi, np.pi / 3)])
def test_predetector_normalized(alpha, beta):
    a = greenberger_predetector(alpha, beta).amplitudes
    assert abs(np.vdot(a, a) - 1) < 1e-12


def test_reduced_schmidt_states():
    rho = reduced_state(bipartite_schmidt_state(R, R), ["X"])
    np.testing.assert_allclose(rho.matrix, np.diag([0.5, 0.5]), atol=1e-15)

    a1, a2, gamma = 0.6, 0.8, 0.9
    out = reduced_state(bipartite_schmidt_state(a1, a2, gamma, collapsed=True, eta=0.3), ["X"])
    vec = np.array([a1, np.exp(1j * gamma) * a2])
    np.testing.assert_allclose(out.matrix, np.outer(vec, vec.conj()), atol=1e-15)
    assert out.rank() == 1


def test_measurement_probabilities_examples():
    mixed = DensityOperator(QUBIT, np.eye(2) / 2)
    for d in [(1, 0, 0), (0, 0, 1), (0.6, 0, 0.8)]:
        np.testing.assert_allclose(measurement_probabilities(mixed, spin_projectors(d)), [0.5, 0.5], atol=1e-15)

    gamma = 1.1
    proj = spin_projectors(equatorial_direction(gamma))
    spin1_after = reduced_state(epr_factorized(gamma), ["spin1"])
    assert abs(measurement_probabilities(spin1_after, proj)[1] - 1) < 1e-12
    spin1_singlet = reduced_state(singlet(), ["spin1"])
    assert abs(measurement_probabilities(spin1_singlet, proj)[1] - 0.5) < 1e-12


def test_measurement_rejects_bad_projectors():
    rho = DensityOperator(QUBIT, np.eye(2) / 2)
    with pytest.raises(StateError):
        measurement_probabilities(rho, [np.diag([1, 0])])
    with pytest.raises(StateError):
        measurement_probabilities(rho, [np.diag([1, 0]), np.full((2, 2), 0.5)])


def test_measurement_is_affine_in_rho():
    rng = np.random.default_rng(11)
    proj = spin_projectors((0, 0.6, 0.8))
    for _ in range(10):
        states = [pure_to_density(PureState.normalized(QUBIT, rng.normal(size=2) + 1j * rng.normal(size=2)))
                  for _ in range(2)]
        w = rng.uniform()
        mixed = measurement_probabilities(mixture([w, 1 - w], states), proj)
        split = w * measurement_probabilities(states[0], proj) + (1 - w) * measurement_probabilities(states[1], proj)
        np.testing.assert_allclose(mixed, split, atol=1e-10)


def test_state_validation():
    with pytest.raises(StateError):
        PureState(QUBIT, [1, 1])
    with pytest.raises(StateError):
        DensityOperator(QUBIT, np.diag([1.5, -0.5]))
    with pytest.raises(StateError):
        DensityOperator(QUBIT, [[0.5, 0.5], [0, 0.5]])


def test_phase_aligned_distance():
    a = np.array([0.6, 0.8j])
    assert phase_aligned_distance(np.exp(0.7j) * a, a) < 1e-15
    assert phase_aligned_distance(a, np.array([0.8j, 0.6])) > 0.1


def test_state_json_roundtrip():
    s = greenberger_predetector(0.3, 0.4)
    data = json.loads(json.dumps(s.to_json()))
    assert data["dims"] == [["photon1", 2], ["photon2", 2], ["shifter", 2]]
    back = PureState.from_json(data)
    np.testing.assert_array_equal(back.amplitudes, s.amplitudes)
    assert back.dims == s.dims
    assert SPIN_DIMS.labels == ("spin1", "spin2")
