import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milburnsim.fock import (
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Z,
    CutoffTooSmallError,
    TruncationError,
    annihilation,
    atom_field,
    coherent_state,
    creation,
    density_from_state,
    displacement,
    expectation,
    identity_field,
    matrix_exponential,
    number,
)


class TestLadderOperators:
    def test_annihilation_entries(self):
        a = annihilation(3)
        expected = np.zeros((3, 3), dtype=complex)
        expected[0, 1] = 1.0
        expected[1, 2] = np.sqrt(2.0)
        np.testing.assert_allclose(a, expected)

    def test_vacuum_annihilation(self):
        a = annihilation(5)
        vac = np.zeros(5)
        vac[0] = 1.0
        np.testing.assert_allclose(a @ vac, 0.0)

    def test_adag_a_equals_number_below_corner(self):
        dcut = 6
        a = annihilation(dcut)
        n_from_ladder = a.conj().T @ a
        np.testing.assert_allclose(n_from_ladder, number(dcut), atol=1e-14)

    def test_truncated_corner_value(self):
        dcut = 6
        a = annihilation(dcut)
        assert (a.conj().T @ a)[dcut - 1, dcut - 1].real == pytest.approx(
            dcut - 1)

    def test_number_diag(self):
        np.testing.assert_allclose(number(2), np.diag([0.0, 1.0]))

    def test_number_trace(self):
        dcut = 9
        assert np.trace(number(dcut)).real == dcut * (dcut - 1) / 2

    @pytest.mark.parametrize("bad", [0, 1, -3])
    def test_rejects_small_cutoff(self, bad):
        with pytest.raises(ValueError):
            annihilation(bad)
        with pytest.raises(ValueError):
            number(bad)

    @given(st.integers(min_value=2, max_value=40))
    @settings(max_examples=20, deadline=None)
    def test_commutator_identity_below_corner(self, dcut):
        a = annihilation(dcut)
        comm = a @ a.conj().T - a.conj().T @ a
        np.testing.assert_allclose(comm[: dcut - 1, : dcut - 1],
                                   np.eye(dcut - 1), atol=1e-12)


class TestDisplacement:
    def test_zero_displacement_is_identity(self):
        np.testing.assert_allclose(displacement(0.0, 8), np.eye(8), atol=1e-14)

    def test_displaced_vacuum_is_coherent_state(self):
        dcut = 32
        vac = np.zeros(dcut)
        vac[0] = 1.0
        np.testing.assert_allclose(displacement(0.5, dcut) @ vac,
                                   coherent_state(0.5, dcut), atol=1e-10)

    def test_unitarity_away_from_edge(self):
        dcut = 64
        d = displacement(0.5, dcut)
        gap = d.conj().T @ d - np.eye(dcut)
        assert np.max(np.abs(gap[:16, :16])) <= 1e-10

    def test_guard_rejects_large_amplitude(self):
        with pytest.raises(TruncationError):
            displacement(3.0, 8)


class TestCoherentState:
    def test_vacuum(self):
        psi = coherent_state(0.0, 4)
        np.testing.assert_allclose(psi, [1, 0, 0, 0])

    def test_prenormalization_norm(self):
        # rebuild the raw Poisson amplitudes and check the retained mass
        alpha, dcut = 2.5, 64
        n = np.arange(dcut)
        from scipy.special import gammaln

        log_w = -abs(alpha) ** 2 + 2 * n * np.log(abs(alpha)) - gammaln(n + 1)
        assert np.exp(log_w).sum() >= 1 - 1e-12

    def test_mean_photon_number(self):
        alpha, dcut = 2.5, 64
        psi = coherent_state(alpha, dcut)
        mean = (psi.conj() @ number(dcut) @ psi).real
        assert abs(mean - abs(alpha) ** 2) <= 1e-9

    def test_cutoff_too_small(self):
        with pytest.raises(CutoffTooSmallError):
            coherent_state(2.5, 8)

    @given(st.floats(min_value=0.1, max_value=2.5),
           st.floats(min_value=-np.pi, max_value=np.pi))
    @settings(max_examples=25, deadline=None)
    def test_poisson_photon_distribution(self, mod, phase):
        alpha = mod * np.exp(1j * phase)
        dcut = 48
        psi = coherent_state(alpha, dcut)
        n = np.arange(dcut)
        from scipy.stats import poisson

        np.testing.assert_allclose(np.abs(psi) ** 2,
                                   poisson.pmf(n, mod**2), atol=1e-12)


class TestJointOperators:
    def test_identity_tensor(self):
        np.testing.assert_allclose(
            atom_field(np.eye(2), identity_field(5)), np.eye(10))

    def test_sigma_z_block_structure(self):
        joint = atom_field(SIGMA_Z, identity_field(3))
        np.testing.assert_allclose(np.diag(joint).real, [1, 1, 1, -1, -1, -1])

    def test_coupling_term_hermitian(self):
        a = annihilation(6)
        h = atom_field(SIGMA_PLUS, a) + atom_field(SIGMA_MINUS, a.conj().T)
        np.testing.assert_allclose(h, h.conj().T)

    def test_rejects_bad_atom_shape(self):
        with pytest.raises(ValueError):
            atom_field(np.eye(3), identity_field(4))


class TestMatrixExponential:
    def test_zero(self):
        np.testing.assert_allclose(matrix_exponential(np.zeros((4, 4))),
                                   np.eye(4))

    def test_diagonal_case(self):
        theta = 0.7
        out = matrix_exponential(1j * theta * SIGMA_Z)
        np.testing.assert_allclose(
            out, np.diag([np.exp(1j * theta), np.exp(-1j * theta)]),
            atol=1e-14)

    def test_hermitian_matches_eigendecomposition(self, rng):
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = 0.5 * (m + m.conj().T)
        w, v = np.linalg.eigh(h)
        oracle = v @ np.diag(np.exp(-1j * w * 0.9)) @ v.conj().T
        np.testing.assert_allclose(matrix_exponential(-1j * 0.9 * h), oracle,
                                   atol=1e-11)

    def test_rejects_nonfinite(self):
        m = np.zeros((2, 2))
        m[0, 0] = np.inf
        with pytest.raises(ValueError):
            matrix_exponential(m)

    @given(st.integers(min_value=2, max_value=12),
           st.floats(min_value=0.1, max_value=5.0))
    @settings(max_examples=20, deadline=None)
    def test_skew_hermitian_gives_unitary(self, dim, scale):
        rng = np.random.default_rng(dim * 1000 + int(scale * 10))
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        skew = 0.5 * (m - m.conj().T)
        skew *= scale / max(np.linalg.norm(skew, 2), 1e-12)
        u = matrix_exponential(skew)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) <= 1e-10


class TestExpectation:
    def test_initial_superposition_sigma_x(self):
        dcut = 16
        field = coherent_state(1.0, dcut)
        atom = np.array([1.0, 1.0]) / np.sqrt(2.0)
        rho = density_from_state(np.kron(atom, field))
        val = expectation(rho, atom_field(SIGMA_X, identity_field(dcut)))
        assert abs(val - 1.0) <= 1e-12

    def test_trace_normalization(self):
        dcut = 16
        psi = np.kron([0.6, 0.8], coherent_state(0.5, dcut))
        rho = density_from_state(psi)
        assert abs(expectation(rho, np.eye(2 * dcut)) - 1.0) <= 1e-12

    def test_excited_state_inversion(self):
        dcut = 16
        psi = np.kron([1.0, 0.0], coherent_state(1.0, dcut))
        val = expectation(psi, atom_field(SIGMA_Z, identity_field(dcut)))
        assert abs(val - 1.0) <= 1e-12

    def test_hermitian_expectation_is_real(self, rng):
        dcut = 8
        psi = rng.normal(size=2 * dcut) + 1j * rng.normal(size=2 * dcut)
        psi /= np.linalg.norm(psi)
        m = rng.normal(size=(2 * dcut, 2 * dcut))
        h = 0.5 * (m + m.T)
        assert abs(expectation(psi, h).imag) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            expectation(np.zeros(4), np.eye(6))
