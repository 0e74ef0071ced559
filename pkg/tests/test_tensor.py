import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nosignal.tensor import (
    DimensionError,
    DimensionSpec,
    NotHermitianError,
    adjoint,
    hermitian_eigenvalues,
    hermitian_eigh,
    kron,
    matrix_from_json,
    matrix_to_json,
    partial_trace,
)
from nosignal.channels import greenberger_T
from nosignal.optics import BS_MATRIX

I2 = np.eye(2)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def random_hermitian(rng, n):
    x = random_matrix(rng, n)
    return x + x.conj().T


def brute_kron(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def brute_partial_trace_second(m, da, db):
    out = np.zeros((da, da), dtype=complex)
    for i in range(da):
        for j in range(da):
            out[i, j] = sum(m[i * db + k, j * db + k] for k in range(db))
    return out


def test_dimension_spec_invariants():
    spec = DimensionSpec.of(("X", 2), ("Y", 3))
    assert spec.total == 6
    assert spec.labels == ("X", "Y")
    with pytest.raises(DimensionError):
        DimensionSpec.of(("X", 2), ("X", 2))
    with pytest.raises(DimensionError):
        DimensionSpec.of(("X", 1))
    assert DimensionSpec.parse("4x2").dims == (4, 2)


def test_kron_trivial_cases():
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(kron(np.diag([1, -1]), I2), np.diag([1, 1, -1, -1]))


def test_kron_beam_splitters_on_source_mode():
    full = kron(BS_MATRIX, BS_MATRIX)
    np.testing.assert_allclose(full, brute_kron(BS_MATRIX, BS_MATRIX), atol=1e-15)
    aa = np.zeros(4, dtype=complex)
    aa[0] = 1.0
    # by hand: a -> (h + i g)/sqrt2, a' -> (c' + i d')/sqrt2
    expected = np.array([1, 1j, 1j, -1]) / 2
    np.testing.assert_allclose(full @ aa, expected, atol=1e-15)


def test_adjoint():
    np.testing.assert_array_equal(adjoint(I2), I2)
    np.testing.assert_array_equal(adjoint([[0, 1j], [0, 0]]), np.array([[0, 0], [-1j, 0]]))
    rng = np.random.default_rng(1)
    for _ in range(10):
        a, b = random_matrix(rng, 3), random_matrix(rng, 3)
        np.testing.assert_array_equal(adjoint(adjoint(a)), a)
        np.testing.assert_allclose(adjoint(a @ b), adjoint(b) @ adjoint(a), atol=1e-12)


def test_kron_associative():
    rng = np.random.default_rng(2)
    a, b, c = random_matrix(rng, 2), random_matrix(rng, 3, 2), random_matrix(rng, 2, 4)
    left, right = kron(kron(a, b), c), kron(a, kron(b, c))
    assert left.shape == right.shape == (12, 16)
    np.testing.assert_allclose(left, right, atol=1e-12)


def test_partial_trace_examples():
    spec = DimensionSpec.of(("A", 2), ("B", 2))
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    np.testing.assert_allclose(partial_trace(np.outer(phi, phi), spec, {"A"}), I2 / 2, atol=1e-15)

    rho_a = np.array([[0.7, 0.2j], [-0.2j, 0.3]])
    rho_b = np.array([[0.4, 0.1], [0.1, 0.6]])
    np.testing.assert_allclose(partial_trace(kron(rho_a, rho_b), spec, {"A"}), rho_a, atol=1e-15)
    np.testing.assert_allclose(partial_trace(kron(rho_a, rho_b), spec, {"B"}), rho_b, atol=1e-15)


def test_partial_trace_of_schmidt_state_is_diagonal():
    spec = DimensionSpec.of(("X", 2), ("Y", 2))
    a1, a2 = 0.6, 0.8j
    psi = np.array([a1, 0, 0, a2])
    red = partial_trace(np.outer(psi, psi.conj()), spec, {"X"})
    np.testing.assert_allclose(red, np.diag([abs(a1) ** 2, abs(a2) ** 2]), atol=1e-15)


def test_partial_trace_against_brute_force():
    rng = np.random.default_rng(3)
    spec = DimensionSpec.of(("X", 3), ("Y", 4))
    m = random_matrix(rng, 12)
    np.testing.assert_allclose(partial_trace(m, spec, {"X"}), brute_partial_trace_second(m, 3, 4), atol=1e-12)


def test_partial_trace_product_rule_and_trace():
    rng = np.random.default_rng(4)
    a, b = random_matrix(rng, 3), random_matrix(rng, 2)
    spec = DimensionSpec.of(("A", 3), ("B", 2))
    np.testing.assert_allclose(partial_trace(kron(a, b), spec, {"A"}), np.trace(b) * a, atol=1e-10)
    m = random_matrix(rng, 6)
    assert abs(np.trace(partial_trace(m, spec, {"B"})) - np.trace(m)) < 1e-12


def test_partial_trace_three_parts_commutes():
    rng = np.random.default_rng(5)
    spec = DimensionSpec.of(("A", 2), ("B", 3), ("C", 2))
    m = random_hermitian(rng, 12)
    direct = partial_trace(m, spec, {"A"})
    via_b = partial_trace(partial_trace(m, spec, {"A", "C"}), spec.select({"A", "C"}), {"A"})
    via_c = partial_trace(partial_trace(m, spec, {"A", "B"}), spec.select({"A", "B"}), {"A"})
    np.testing.assert_allclose(direct, via_b, atol=1e-10)
    np.testing.assert_allclose(direct, via_c, atol=1e-10)


@pytest.mark.parametrize("keep", [set(), {"A", "B"}, {"Q"}])
def test_partial_trace_rejects_bad_keep(keep):
    spec = DimensionSpec.of(("A", 2), ("B", 2))
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4), spec, keep)


def test_partial_trace_rejects_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(3), DimensionSpec.of(("A", 2), ("B", 2)), {"A"})


def test_eigenvalues_simple():
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([3, 1, 2])), [1, 2, 3], atol=1e-15)
    np.testing.assert_allclose(hermitian_eigenvalues([[0, 1], [1, 0]]), [-1, 1], atol=1e-15)


def test_greenberger_T_gram_spectrum_symbolic_and_numeric():
    g = sympy.symbols("gamma", real=True)
    t = sympy.Matrix([[1, sympy.exp(sympy.I * g)], [0, 0]])
    gram = sympy.simplify(t.H * t)
    assert gram.rank() == 1
    assert sympy.simplify(gram.trace()) == 2
    assert set(sympy.simplify(ev) for ev in gram.eigenvals()) == {0, 2}
    for gamma in np.linspace(0, 2 * np.pi, 9):
        m = greenberger_T(gamma).matrix
        np.testing.assert_allclose(hermitian_eigenvalues(adjoint(m) @ m), [0, 2], atol=1e-12)


@pytest.mark.parametrize("n", [2, 5, 16, 64])
def test_jacobi_matches_lapack(n):
    rng = np.random.default_rng(n)
    h = random_hermitian(rng, n)
    w, v = hermitian_eigh(h)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-9)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-9)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-10)
    assert abs(w.sum() - np.trace(h).real) < 1e-8


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues([[0, 1], [0, 0]])


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**32 - 1))
def test_eigenvalue_sum_is_trace(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    assert abs(hermitian_eigenvalues(h).sum() - np.trace(h).real) < 1e-8


def test_matrix_json_roundtrip():
    m = np.array([[1 + 2j, 0], [-0.5, 3j]])
    data = matrix_to_json(m)
    assert data["rows"] == 2 and data["entries"][0] == [1.0, 2.0]
    np.testing.assert_array_equal(matrix_from_json(data), m)
    with pytest.raises(DimensionError):
        matrix_from_json({"rows": 2, "cols": 2, "entries": [[1, 0]]})
    with pytest.raises(ValueError):
        matrix_from_json({"rows": 1, "cols": 1, "entries": [[float("nan"), 0]]})
