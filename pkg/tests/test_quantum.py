"""L=0 basis, Hamiltonian assembly, spectra, slopes, oscillatory density."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esqpt import density, fock, models, quantum
from esqpt.models import ModelParams

from conftest import SQRT2


def fock_l0_spectrum(params, N):
    """Oracle: eigenvalues of H restricted to the L=0 subspace of Fock space."""
    hf = fock.matrix(models.h_scaled(params), N).real / N
    l2 = fock.matrix(fock.l_operator_squared(), N).real
    evals, evecs = np.linalg.eigh(l2)
    q = evecs[:, np.abs(evals) < 1e-8]
    return np.linalg.eigvalsh(q.T @ hf @ q)


# -- basis ------------------------------------------------------------------


def test_basis_dimension_small_values():
    assert [quantum.basis_dimension(n) for n in (0, 1, 2, 3, 6)] == [1, 1, 2, 3, 7]


def test_basis_dimension_matches_mscheme_oracle():
    for n in range(0, 7):
        assert quantum.basis_dimension(n) == fock.l0_dimension(n)


@settings(deadline=None, max_examples=30)
@given(n=st.integers(0, 40))
def test_sector_labels_partition(n):
    labels = quantum.sector_labels(n)
    assert len(set(labels)) == len(labels)
    for k, a in labels:
        assert 2 * k + 3 * a == n and k >= 0 and a >= 0


def test_basis_states_sorted_unique():
    basis = quantum.build_basis(12)
    assert basis.dimension == quantum.basis_dimension(12)
    assert len(set(basis.states)) == basis.dimension
    for n, tau in basis.states:
        assert tau % 3 == 0 and (n - tau) % 2 == 0 and tau <= n


# -- Hamiltonian vs Fock oracle ---------------------------------------------


@pytest.mark.parametrize("beta0p, lam", [(SQRT2, 0.4), (SQRT2, 2.2), (1.7, 0.9), (1.3, 1.5)])
def test_hamiltonian_matches_fock_oracle(beta0p, lam):
    params = ModelParams(beta0p, lam)
    for N in (2, 4, 5):
        got = np.linalg.eigvalsh(quantum.build_hamiltonian(params, N))
        want = fock_l0_spectrum(params, N)
        assert np.abs(np.sort(got) - np.sort(want)).max() < 1e-10


def test_hamiltonian_symmetric_and_trace():
    params = ModelParams(1.7, 2.5)
    h = quantum.build_hamiltonian(params, 30)
    assert np.array_equal(h, h.T)
    evals = np.linalg.eigvalsh(h)
    assert evals.sum() == pytest.approx(np.trace(h), rel=1e-9)


def test_n_cap():
    with pytest.raises(ValueError):
        quantum.build_hamiltonian(ModelParams(1.0, 0.5), 300)


# -- known spectra ----------------------------------------------------------


def test_u5_diagonal_formula():
    for N in (2, 3, 10):
        b0 = 1.3
        spec = quantum.diagonalize(ModelParams(b0, 0.0), N)
        nd = np.arange(N + 1)
        allowed = [n for n in nd if quantum.sector_size(n) > 0]
        want = []
        for n in allowed:
            e = (2.0 / N) * n * (n - 1) + (2.0 * b0**2 / N) * (N - n) * n
            want.extend([e] * quantum.sector_size(n))
        assert np.abs(np.sort(spec.energies) - np.sort(want)).max() < 1e-10


def test_u5_small_spectra():
    assert np.allclose(
        quantum.diagonalize(ModelParams(SQRT2, 0.0), 3).energies, [0, 4, 4], atol=1e-10
    )
    assert np.allclose(
        quantum.diagonalize(ModelParams(SQRT2, 0.0), 2).energies, [0, 2], atol=1e-10
    )


def test_zero_modes():
    for lam in (0.0, 0.35, 0.8, 1.0):
        e0 = quantum.diagonalize(ModelParams(1.7, lam), 30).energies[0]
        assert abs(e0) < 1e-10
    # condensate zero mode of the second branch at beta0p = sqrt(2), lambda = 2
    e0 = quantum.diagonalize(ModelParams(SQRT2, 2.0), 30).energies[0]
    assert abs(e0) < 1e-8


def test_ground_state_not_negative():
    for lam in (0.5, 1.0, 1.8, 3.0):
        for b0 in (0.9, SQRT2, 1.7):
            e0 = quantum.diagonalize(ModelParams(b0, lam), 25).energies[0]
            assert e0 > -1e-8


def test_spectrum_continuous_at_critical_lambda():
    b0 = 1.7
    e_left = quantum.diagonalize(ModelParams(b0, 1.0), 25).energies
    e_right = quantum.diagonalize(ModelParams(b0, 1.0 + 1e-12), 25).energies
    assert np.abs(e_left - e_right).max() < 1e-9


# -- slopes and expectations -------------------------------------------------


def test_hf_slopes_match_finite_differences():
    for lam in (0.6, 1.9):
        params = ModelParams(1.5, lam)
        d = 1e-6
        e1 = quantum.diagonalize(ModelParams(1.5, lam - d), 15).energies
        e2 = quantum.diagonalize(ModelParams(1.5, lam + d), 15).energies
        fd = (e2 - e1) / (2 * d)
        hf = quantum.hf_slopes(params, 15)
        assert np.abs(fd - hf).max() < 1e-5


def test_slopes_differ_across_critical_point():
    left = quantum.diagonalize(ModelParams(1.7, 1.0), 25, side="left").slopes
    right = quantum.diagonalize(ModelParams(1.7, 1.0), 25, side="right").slopes
    assert np.abs(left - right).max() > 1e-3


def test_nd_expectation_bounds_and_u5_integers():
    N = 20
    spec = quantum.diagonalize(ModelParams(1.2, 0.7), N)
    assert np.all(spec.nd_expectation > -1e-10)
    assert np.all(spec.nd_expectation < N + 1e-10)
    u5 = quantum.diagonalize(ModelParams(1.2, 0.0), N)
    assert np.abs(u5.nd_expectation - np.round(u5.nd_expectation)).max() < 1e-10


def test_epsilon_scaling():
    spec = quantum.diagonalize(ModelParams(1.7, 0.5), 20)
    assert np.allclose(spec.epsilon, spec.energies / 40.0)
    assert np.allclose(spec.excitation, spec.energies - spec.energies[0])


# -- oscillatory density -----------------------------------------------------


def test_oscillatory_density_integrates_to_zero():
    params = ModelParams(SQRT2, 0.5)
    grid = density.mc_density(params, n_samples=400_000, seed=3, ref_N=30)
    tilde = quantum.oscillatory_density(params, 30, grid)
    total = np.sum(tilde) * grid.binwidth
    assert abs(total) < 0.05 * quantum.basis_dimension(30)
