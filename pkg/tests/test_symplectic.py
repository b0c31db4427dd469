import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.optimize import minimize

from clbattery.errors import NotPositiveDefinite, UnphysicalCovariance
from clbattery.symplectic import (
    CovarianceMatrix,
    QuadraticHamiltonian,
    canonical_two_mode_energy_check,
    gaussian_entropy,
    gaussian_ergotropy,
    optimal_symplectic,
    passive_covariance,
    passive_temperature,
    random_covariance,
    random_orthogonal_symplectic,
    random_symplectic,
    single_mode_ergotropy,
    symplectic_eigenvalues,
    symplectic_form,
    thermal_symplectic_eigenvalue,
    two_mode_canonical_covariance,
    williamson,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 3)


def minimum_energy_by_search(sigma, ham, starts=8, seed=0):
    """Minimise tr(L sigma L^T M)/2 over L = expm(J S), S symmetric."""
    n = sigma.shape[0]
    j = symplectic_form(n // 2)
    iu = np.triu_indices(n)
    rng = np.random.default_rng(seed)

    def energy(params):
        s = np.zeros((n, n))
        s[iu] = params
        s = s + s.T - np.diag(np.diag(s))
        lam = expm(j @ s)
        return 0.5 * np.trace(lam @ sigma @ lam.T @ ham)

    best = math.inf
    for _ in range(starts):
        res = minimize(energy, rng.normal(scale=0.3, size=len(iu[0])), method="BFGS",
                       options={"gtol": 1e-12})
        best = min(best, res.fun)
    return best


def test_symplectic_form():
    j = symplectic_form(2)
    assert np.array_equal(j @ j, -np.eye(4))
    assert j[0, 1] == 1.0 and j[1, 0] == -1.0 and j[0, 3] == 0.0


def test_covariance_validation():
    with pytest.raises(UnphysicalCovariance):
        CovarianceMatrix(np.diag([0.1, 0.1]))
    with pytest.raises(ValueError):
        CovarianceMatrix(np.array([[1.0, 0.2], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        CovarianceMatrix(np.eye(3))
    cov = CovarianceMatrix(np.diag([0.5, 0.5]))
    assert cov.dim == 1
    with pytest.raises(ValueError):
        cov.entries[0, 0] = 2.0


def test_hamiltonian_must_be_psd():
    with pytest.raises(ValueError):
        QuadraticHamiltonian(np.diag([1.0, -1.0]))
    ham = QuadraticHamiltonian.oscillators(1.0, 2.0)
    np.testing.assert_array_equal(ham.matrix, np.diag([1.0, 1.0, 4.0, 1.0]))


@pytest.mark.parametrize("sigma, expected", [
    (np.diag([0.7, 0.7]), [0.7]),
    (np.array([[2.0, 0.5], [0.5, 1.0]]), [math.sqrt(1.75)]),
    (np.diag([3.0, 3.0, 1.0, 1.0]), [1.0, 3.0]),
])
def test_symplectic_eigenvalue_examples(sigma, expected):
    np.testing.assert_allclose(symplectic_eigenvalues(sigma), expected, rtol=1e-13)


def test_symplectic_eigenvalues_match_eigenvalues_of_sigma_j(rng):
    sigma = random_covariance(3, rng)
    ev = np.linalg.eigvals(sigma @ symplectic_form(3))
    np.testing.assert_allclose(np.sort(np.abs(ev.imag))[::2], symplectic_eigenvalues(sigma), rtol=1e-10)
    assert np.max(np.abs(ev.real)) < 1e-10


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        williamson(np.diag([1.0, 0.0]))


@given(seeds, dims)
def test_random_symplectic_preserves_form(seed, dim):
    rng = np.random.default_rng(seed)
    j = symplectic_form(dim)
    lam = random_symplectic(dim, rng, squeezing=1.5)
    np.testing.assert_allclose(lam @ j @ lam.T, j, atol=1e-10)
    orth = random_orthogonal_symplectic(dim, rng)
    np.testing.assert_allclose(orth @ orth.T, np.eye(2 * dim), atol=1e-12)
    np.testing.assert_allclose(orth @ j @ orth.T, j, atol=1e-12)


@given(seeds, dims, st.sampled_from(["auto", "schur"]))
def test_williamson_residuals(seed, dim, method):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(dim, rng, squeezing=1.5)
    dec = williamson(sigma, method=method)
    j = symplectic_form(dim)
    assert np.linalg.norm(dec.lam @ j @ dec.lam.T - j) <= 1e-10
    assert np.linalg.norm(dec.reconstruct() - sigma) <= 1e-10 * np.linalg.norm(sigma)
    assert np.all(np.diff(dec.spectrum) >= 0)
    assert np.all(dec.spectrum >= 0.5 - 1e-10)


def test_williamson_of_williamson_form_is_trivial():
    dec = williamson(np.diag([0.9, 0.9]))
    np.testing.assert_allclose(dec.lam, np.eye(2), atol=1e-14)
    np.testing.assert_allclose(dec.spectrum, [0.9])


def test_thermal_spectrum():
    cov = CovarianceMatrix.thermal(2.0, 1.0)
    expected = 0.5 / math.tanh(1.0)
    assert williamson(cov).spectrum[0] == pytest.approx(expected, rel=1e-14)
    assert thermal_symplectic_eigenvalue(2.0, 1.0) == pytest.approx(0.6565176427, rel=1e-9)
    assert thermal_symplectic_eigenvalue(2.0, 0.0) == 0.5


@given(seeds, dims)
def test_spectrum_is_symplectic_invariant(seed, dim):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(dim, rng)
    lam = random_symplectic(dim, rng)
    np.testing.assert_allclose(symplectic_eigenvalues(lam @ sigma @ lam.T), symplectic_eigenvalues(sigma),
                               rtol=1e-9)


@given(seeds, dims)
def test_entropy_is_symplectic_invariant(seed, dim):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(dim, rng)
    lam = random_symplectic(dim, rng)
    assert gaussian_entropy(lam @ sigma @ lam.T) == pytest.approx(gaussian_entropy(sigma), abs=1e-9)


def test_entropy_values():
    assert gaussian_entropy(np.diag([0.5, 0.5])) == pytest.approx(0.0, abs=1e-13)
    assert gaussian_entropy(np.diag([1.0, 1.0])) == pytest.approx(1.5 * math.log(1.5) - 0.5 * math.log(0.5),
                                                                  rel=1e-14)
    # Bose-Einstein entropy of a thermal oscillator.
    w, t = 1.3, 0.7
    n = 1.0 / math.expm1(w / t)
    bose = (n + 1) * math.log(n + 1) - n * math.log(n)
    assert gaussian_entropy(CovarianceMatrix.thermal(w, t)) == pytest.approx(bose, rel=1e-12)


@pytest.mark.parametrize("sigma, ham, expected", [
    (np.diag([0.5, 0.5]), np.eye(2), 0.0),
    (np.diag([0.5, 2.0]), np.eye(2), 0.25),
    (np.diag([3.0, 3.0, 1.0, 1.0]), np.diag([1.0, 1.0, 4.0, 1.0]), 0.5),
])
def test_ergotropy_examples(sigma, ham, expected):
    assert gaussian_ergotropy(sigma, ham) == pytest.approx(expected, abs=1e-13)
    lam = optimal_symplectic(sigma, ham)
    final = 0.5 * np.trace(lam @ sigma @ lam.T @ ham)
    assert final == pytest.approx(0.5 * np.trace(sigma @ ham) - expected, abs=1e-10)


@pytest.mark.parametrize("sigma, ham", [
    (np.diag([0.5, 2.0]), np.eye(2)),
    (np.diag([3.0, 3.0, 1.0, 1.0]), np.diag([1.0, 1.0, 4.0, 1.0])),
])
def test_ergotropy_matches_direct_minimisation(sigma, ham):
    floor = minimum_energy_by_search(sigma, ham)
    assert 0.5 * np.trace(sigma @ ham) - floor == pytest.approx(gaussian_ergotropy(sigma, ham), abs=1e-7)


@given(seeds, dims)
def test_no_symplectic_beats_the_ergotropy(seed, dim):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(dim, rng)
    ham = random_covariance(dim, rng, squeezing=0.7)
    floor = 0.5 * np.trace(sigma @ ham) - gaussian_ergotropy(sigma, ham)
    lam = random_symplectic(dim, rng, size=500)
    energies = 0.5 * np.einsum("nij,ji->n", lam @ sigma @ np.swapaxes(lam, 1, 2), ham)
    assert energies.min() >= floor - 1e-9
    opt = optimal_symplectic(sigma, ham)
    j = symplectic_form(dim)
    np.testing.assert_allclose(opt @ j @ opt.T, j, atol=1e-9)
    assert 0.5 * np.trace(opt @ sigma @ opt.T @ ham) == pytest.approx(floor, rel=1e-10, abs=1e-10)


@given(seeds, dims, st.floats(0.0, 10.0))
def test_ergotropy_invariant_under_free_evolution(seed, dim, t):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(dim, rng)
    ham = random_covariance(dim, rng, squeezing=0.7)
    rot = expm(symplectic_form(dim) @ ham * t)
    moved = rot @ sigma @ rot.T
    assert gaussian_ergotropy(moved, ham) == pytest.approx(gaussian_ergotropy(sigma, ham), abs=1e-9)


@given(seeds, st.floats(0.2, 5.0))
def test_single_mode_formula_agrees_with_general(seed, w0):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(1, rng, squeezing=1.5)
    general = gaussian_ergotropy(sigma, np.diag([w0 * w0, 1.0]))
    closed = single_mode_ergotropy(sigma[0, 0], sigma[0, 1], sigma[1, 1], w0)
    assert closed == pytest.approx(general, abs=1e-12 * max(1.0, general))


def test_single_mode_examples():
    assert single_mode_ergotropy(0.25, 0.0, 1.0, 2.0) == 0.0
    assert single_mode_ergotropy(0.5, 0.0, 2.0, 1.0) == pytest.approx(0.25, abs=1e-15)
    for t in (0.0, 0.3, 5.0):
        cov = CovarianceMatrix.thermal(1.7, t)
        assert single_mode_ergotropy(cov.entries[0, 0], 0.0, cov.entries[1, 1], 1.7) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(UnphysicalCovariance):
        single_mode_ergotropy(0.1, 0.0, 0.1, 1.0)


def test_passive_covariance_examples():
    np.testing.assert_allclose(passive_covariance(0.5, 0.5, 0.0, 1.0).entries, np.diag([0.5, 0.5]))
    out = passive_covariance(0.5, 2.0, 0.0, 1.0).entries
    np.testing.assert_allclose(out, np.eye(2), rtol=1e-15)
    out = passive_covariance(0.8, 3.0, 0.4, 2.0).entries
    assert single_mode_ergotropy(out[0, 0], out[0, 1], out[1, 1], 2.0) == pytest.approx(0.0, abs=1e-15)


def test_passive_temperature_examples():
    assert passive_temperature(1.0, 1.0, 0.0, 1.0) == pytest.approx(math.log(3.0), rel=1e-14)
    assert passive_temperature(0.5, 0.5, 0.0, 1.0) == math.inf
    for w0, t in ((2.0, 1.0), (0.5, 0.2), (3.0, 10.0)):
        cov = CovarianceMatrix.thermal(w0, t).entries
        assert passive_temperature(cov[0, 0], cov[1, 1], 0.0, w0) == pytest.approx(1.0 / t, rel=1e-10)


def test_canonical_check_examples():
    assert canonical_two_mode_energy_check(1.0, 1.0, 0.3, 0.3, 1.0) == pytest.approx((2.0, 2.0), abs=1e-12)
    assert canonical_two_mode_energy_check(1.0, 1.0, 0.0, 0.0, 1.0) == pytest.approx((2.0, 2.0), abs=1e-12)
    e_canon, e_min = canonical_two_mode_energy_check(1.0, 1.0, 0.3, -0.3, 1.0)
    assert e_canon == 2.0 and e_min < 2.0 - 1e-3
    with pytest.raises(UnphysicalCovariance):
        canonical_two_mode_energy_check(1.0, 1.0, 1.5, 0.0, 1.0)


@given(st.floats(0.6, 3.0), st.floats(0.6, 3.0), st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))
def test_canonical_check_matches_williamson(a, b, x1, x2):
    c1, c2 = x1 * math.sqrt(a * b), x2 * math.sqrt(a * b)
    sigma = two_mode_canonical_covariance(a, b, c1, c2)
    if symplectic_eigenvalues(sigma)[0] < 0.5:
        return
    _, e_min = canonical_two_mode_energy_check(a, b, c1, c2, 1.0)
    assert e_min == pytest.approx(symplectic_eigenvalues(sigma).sum(), rel=1e-9)
