"""Gaussian-state linear algebra in interleaved ``(q1, p1, q2, p2, ...)`` order.

Covariance matrices use the symmetrised convention
``sigma_ij = <{x_i, x_j}>/2`` with hbar = 1, so the vacuum of a unit
frequency oscillator is ``diag(1/2, 1/2)`` and physical states have every
symplectic eigenvalue at least 1/2. A quadratic Hamiltonian
``H = x^T M x / 2`` has mean energy ``tr(sigma M) / 2``.

The Williamson normal form is computed from the real Schur form of the
antisymmetric matrix ``sqrt(sigma) J sqrt(sigma)``, obtained through the
Hermitian eigendecomposition of ``i sqrt(sigma) J sqrt(sigma)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite, UnphysicalCovariance

_EIG_FLOOR = 1e-12
_PHYSICAL_SLACK = 1e-10


def symplectic_form(dim: int) -> np.ndarray:
    """Block-diagonal ``J`` with ``[[0, 1], [-1, 0]]`` on each mode."""
    return np.kron(np.eye(dim), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _as_array(sigma):
    if isinstance(sigma, CovarianceMatrix):
        return sigma.entries
    if isinstance(sigma, QuadraticHamiltonian):
        return sigma.matrix
    return np.asarray(sigma, dtype=float)


def _check_square_even(mat, what):
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] % 2:
        raise ValueError(f"{what} must be a 2d x 2d matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError(f"{what} has non-finite entries")


def _symmetrize(mat, what):
    scale = max(1.0, float(np.max(np.abs(mat))))
    if np.max(np.abs(mat - mat.T)) > 1e-10 * scale:
        raise ValueError(f"{what} is not symmetric")
    return 0.5 * (mat + mat.T)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second moments of a zero-mean Gaussian state.

    Construction symmetrises ``entries`` and rejects matrices violating
    the uncertainty principle (a symplectic eigenvalue below 1/2).
    """

    entries: np.ndarray

    def __post_init__(self):
        mat = np.array(self.entries, dtype=float)
        _check_square_even(mat, "covariance matrix")
        mat = _symmetrize(mat, "covariance matrix")
        spectrum = symplectic_eigenvalues(mat)
        if spectrum[0] < 0.5 - _PHYSICAL_SLACK:
            raise UnphysicalCovariance(
                f"smallest symplectic eigenvalue {spectrum[0]:.6g} is below 1/2"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0] // 2

    @classmethod
    def single_mode(cls, sigma11, sigma22, sigma12=0.0) -> "CovarianceMatrix":
        return cls(np.array([[sigma11, sigma12], [sigma12, sigma22]], dtype=float))

    @classmethod
    def thermal(cls, omega0: float, temperature: float) -> "CovarianceMatrix":
        """Gibbs state of ``H = (p^2 + omega0^2 q^2) / 2``."""
        nu = thermal_symplectic_eigenvalue(omega0, temperature)
        return cls(np.diag([nu / omega0, nu * omega0]))


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """``H = x^T M x / 2`` with ``M`` positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=float)
        _check_square_even(mat, "Hamiltonian matrix")
        mat = _symmetrize(mat, "Hamiltonian matrix")
        lowest = np.linalg.eigvalsh(mat)[0]
        if lowest < -1e-12 * max(1.0, float(np.max(np.abs(mat)))):
            raise NotPositiveDefinite(f"Hamiltonian matrix has eigenvalue {lowest:.3g} < 0")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] // 2

    @classmethod
    def oscillators(cls, *omegas: float) -> "QuadraticHamiltonian":
        """Uncoupled oscillators ``(p^2 + omega^2 q^2) / 2``."""
        return cls(np.diag(np.ravel([[w * w, 1.0] for w in omegas])))

    def energy(self, sigma) -> float:
        return 0.5 * float(np.trace(_as_array(sigma) @ self.matrix))


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``sigma = Lambda diag(s1, s1, ..., sd, sd) Lambda^T`` with symplectic ``Lambda``.

    ``spectrum`` is ascending.
    """

    lam: np.ndarray
    spectrum: np.ndarray

    def normal_form(self) -> np.ndarray:
        return np.diag(np.repeat(self.spectrum, 2))

    def reconstruct(self) -> np.ndarray:
        return self.lam @ self.normal_form() @ self.lam.T


def thermal_symplectic_eigenvalue(omega0: float, temperature: float) -> float:
    """``coth(omega0 / 2T) / 2``, equal to 1/2 at zero temperature."""
    if temperature < 0:
        raise ValueError("temperature must be >= 0")
    if temperature == 0:
        return 0.5
    x = omega0 / (2.0 * temperature)
    return 0.5 / math.tanh(x) if x < 350 else 0.5


def _spectral_sqrt(mat, what, allow_singular=False):
    vals, vecs = np.linalg.eigh(mat)
    floor = _EIG_FLOOR * max(1.0, float(np.max(np.abs(vals))))
    if vals[0] < (-floor if allow_singular else floor):
        raise NotPositiveDefinite(f"{what} has eigenvalue {vals[0]:.3g}, not positive definite")
    vals = np.clip(vals, 0.0, None)
    root = np.sqrt(vals)
    return (vecs * root) @ vecs.T, vecs, root


def _schur_pairs(sqrt_mat):
    """Positive spectrum and real Schur basis of ``A = sqrt J sqrt``.

    Returns ``(s, O)`` with ``A O = O blockdiag([[0, s_k], [-s_k, 0]])``
    and ``O`` orthogonal, blocks ordered by ascending ``s``.
    """
    dim = sqrt_mat.shape[0] // 2
    a = sqrt_mat @ symplectic_form(dim) @ sqrt_mat
    vals, vecs = np.linalg.eigh(1j * a)
    # eigh sorts ascending, so the last d eigenpairs carry +s_k.
    pos = vals[dim:]
    vec = vecs[:, dim:]
    basis = np.empty((2 * dim, 2 * dim))
    basis[:, 0::2] = math.sqrt(2.0) * vec.imag
    basis[:, 1::2] = math.sqrt(2.0) * vec.real
    return np.clip(pos, 0.0, None), basis


def symplectic_eigenvalues(sigma) -> np.ndarray:
    """Ascending symplectic spectrum: ``+-i s_k`` are the eigenvalues of ``sigma J``.

    Positive semidefinite input is accepted (zero symplectic eigenvalues
    are returned for singular directions).
    """
    mat = _as_array(sigma)
    _check_square_even(mat, "matrix")
    root, _, _ = _spectral_sqrt(0.5 * (mat + mat.T), "matrix", allow_singular=True)
    dim = mat.shape[0] // 2
    vals = np.linalg.eigvalsh(1j * (root @ symplectic_form(dim) @ root))
    return np.clip(vals[dim:], 0.0, None)


def williamson(sigma, method: str = "auto") -> WilliamsonDecomposition:
    """Williamson normal form of a symmetric positive-definite matrix.

    Args:
        method: ``"schur"`` always uses the general route; ``"auto"`` takes
            the closed form ``s = sqrt(det)``, ``Lambda = sqrt(sigma / s)``
            for a single mode.

    Raises:
        NotPositiveDefinite: some eigenvalue of ``sigma`` is below 1e-12
            (relative to the largest).
    """
    mat = _as_array(sigma)
    _check_square_even(mat, "matrix")
    mat = 0.5 * (mat + mat.T)
    if method not in ("auto", "schur"):
        raise ValueError(f"unknown method {method!r}")
    if mat.shape[0] == 2 and method == "auto":
        det = mat[0, 0] * mat[1, 1] - mat[0, 1] ** 2
        if not (mat[0, 0] > 0 and det > 0):
            raise NotPositiveDefinite("2x2 matrix is not positive definite")
        s = math.sqrt(det)
        # A 2x2 matrix with unit determinant is symplectic.
        root, _, _ = _spectral_sqrt(mat / s, "matrix")
        return WilliamsonDecomposition(root, np.array([s]))
    root, vecs, eig_root = _spectral_sqrt(mat, "matrix")
    inv_root = (vecs / eig_root) @ vecs.T
    s, basis = _schur_pairs(root)
    dim = mat.shape[0] // 2
    j = symplectic_form(dim)
    lam = -j @ inv_root @ basis @ np.diag(np.repeat(np.sqrt(s), 2)) @ j
    return WilliamsonDecomposition(lam, s)


def _ham_matrix(ham):
    if isinstance(ham, QuadraticHamiltonian):
        return ham.matrix
    return QuadraticHamiltonian(np.asarray(ham, dtype=float)).matrix


def _cov_matrix(sigma):
    if isinstance(sigma, CovarianceMatrix):
        return sigma.entries
    return CovarianceMatrix(np.asarray(sigma, dtype=float)).entries


def gaussian_ergotropy(sigma, ham) -> float:
    """Work extractable from a Gaussian state by Gaussian unitaries.

    ``tr(sigma M)/2 - sum_k s_k m_k`` pairing ascending symplectic
    eigenvalues of ``sigma`` with descending ones of ``M``. Round-off
    negatives down to -1e-12 are clamped to zero.
    """
    cov = _cov_matrix(sigma)
    m = _ham_matrix(ham)
    if cov.shape != m.shape:
        raise ValueError(f"shape mismatch: sigma {cov.shape}, M {m.shape}")
    s_up = symplectic_eigenvalues(cov)
    m_down = symplectic_eigenvalues(m)[::-1]
    energy = 0.5 * float(np.trace(cov @ m))
    value = energy - float(s_up @ m_down)
    if value < 0 and value > -1e-12 * max(1.0, abs(energy)):
        return 0.0
    return value


def optimal_symplectic(sigma, ham) -> np.ndarray:
    """Symplectic map taking ``sigma`` to its minimum-energy orbit point.

    ``Lambda_U = -J Lambda_M Lambda_sigma^T J`` where ``Lambda_sigma`` has
    ascending and ``Lambda_M`` descending symplectic order, so the image
    ``Lambda_U sigma Lambda_U^T`` is Williamson-aligned with ``M``.
    ``M`` must be positive definite.
    """
    cov = _cov_matrix(sigma)
    m = _ham_matrix(ham)
    w_sigma = williamson(cov)
    w_m = williamson(m)
    dim = cov.shape[0] // 2
    order = np.arange(dim)[::-1]
    cols = np.ravel([[2 * k, 2 * k + 1] for k in order])
    lam_m_down = w_m.lam[:, cols]
    j = symplectic_form(dim)
    return -j @ lam_m_down @ w_sigma.lam.T @ j


def _single_mode_det(sigma11, sigma22, sigma12):
    if not (sigma11 > 0 and sigma22 > 0):
        raise UnphysicalCovariance("diagonal second moments must be positive")
    det = sigma11 * sigma22 - sigma12 * sigma12
    if det < 0.25 * (1.0 - 2 * _PHYSICAL_SLACK):
        raise UnphysicalCovariance(f"det = {det:.12g} violates the uncertainty bound 1/4")
    return det


def single_mode_ergotropy(sigma11, sigma12, sigma22, omega0) -> float:
    """Ergotropy of one oscillator of frequency ``omega0``.

    Evaluated as ``(sqrt(s22) - omega0 sqrt(s11))^2 / 2`` plus the
    correlation term, which avoids cancelling two large energies.
    """
    if not omega0 > 0:
        raise ValueError("omega0 must be > 0")
    det = _single_mode_det(sigma11, sigma22, sigma12)
    diag = math.sqrt(sigma11 * sigma22)
    aligned = 0.5 * (math.sqrt(sigma22) - omega0 * math.sqrt(sigma11)) ** 2
    return aligned + omega0 * sigma12 * sigma12 / (diag + math.sqrt(det))


def passive_covariance(sigma11, sigma22, sigma12, omega0) -> CovarianceMatrix:
    """Passive state with the same symplectic eigenvalue: ``sqrt(det) diag(1/w0, w0)``."""
    if not omega0 > 0:
        raise ValueError("omega0 must be > 0")
    nu = math.sqrt(max(_single_mode_det(sigma11, sigma22, sigma12), 0.25))
    return CovarianceMatrix(np.diag([nu / omega0, nu * omega0]))


def passive_temperature(sigma11, sigma22, sigma12, omega0) -> float:
    """Inverse temperature of the passive state, ``(2/w0) arccoth(2 sqrt(det))``.

    Returns ``inf`` for a pure state.
    """
    if not omega0 > 0:
        raise ValueError("omega0 must be > 0")
    twice_nu = 2.0 * math.sqrt(_single_mode_det(sigma11, sigma22, sigma12))
    if twice_nu <= 1.0 + 1e-12:
        return math.inf
    return 2.0 / omega0 * math.atanh(1.0 / twice_nu)


def _entropy_term(s):
    up = s + 0.5
    down = s - 0.5
    return up * np.log(up) - np.where(down > 0, down * np.log(np.where(down > 0, down, 1.0)), 0.0)


def gaussian_entropy(sigma) -> float:
    """Von Neumann entropy in nats, ``sum (s+1/2)ln(s+1/2) - (s-1/2)ln(s-1/2)``."""
    s = np.maximum(symplectic_eigenvalues(_cov_matrix(sigma)), 0.5)
    return float(np.sum(_entropy_term(s)))


def two_mode_canonical_covariance(a, b, c1, c2) -> np.ndarray:
    """Interleaved two-mode matrix with ``q``-correlation ``c1`` and ``p``-correlation ``c2``."""
    return np.array([
        [a, 0.0, c1, 0.0],
        [0.0, a, 0.0, c2],
        [c1, 0.0, b, 0.0],
        [0.0, c2, 0.0, b],
    ])


def canonical_two_mode_energy_check(a, b, c1, c2, omega0) -> tuple[float, float]:
    """Energy of a two-mode canonical form against its passive minimum.

    For two resonant oscillators ``M = omega0 * I`` the canonical form has
    energy ``omega0 (a + b)`` while the passive state reaches
    ``omega0 (s1 + s2)`` with
    ``s^2 = (a^2 + b^2 + 2 c1 c2 -+ kappa) / 2``.

    Returns:
        ``(E_canon, E_min)``; ``E_min <= E_canon`` with equality iff
        ``c1 == c2``.

    Raises:
        UnphysicalCovariance: ``a`` or ``b`` not positive, or a correlation
            exceeding ``sqrt(ab)``.
    """
    if not (a > 0 and b > 0):
        raise UnphysicalCovariance("a and b must be positive")
    if c1 * c1 > a * b or c2 * c2 > a * b:
        raise UnphysicalCovariance("correlations must satisfy c^2 <= ab")
    kappa_sq = (a * a - b * b) ** 2 + 4 * (a * a + b * b) * c1 * c2 + 4 * a * b * (c1 * c1 + c2 * c2)
    kappa = math.sqrt(max(kappa_sq, 0.0))
    base = a * a + b * b + 2 * c1 * c2
    s_low = math.sqrt(max(0.5 * (base - kappa), 0.0))
    s_high = math.sqrt(0.5 * (base + kappa))
    e_canon = omega0 * (a + b)
    e_min = omega0 * (s_low + s_high)
    if e_min > e_canon * (1 + 1e-10):
        raise ArithmeticError("passive energy exceeds canonical energy")
    return e_canon, e_min


def random_orthogonal_symplectic(dim: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-random passive symplectic matrices (orthogonal and symplectic).

    Returns one ``2d x 2d`` matrix, or a stack of ``size`` of them.
    """
    n = 1 if size is None else size
    z = (rng.standard_normal((n, dim, dim)) + 1j * rng.standard_normal((n, dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=1, axis2=2)
    q = q * (diag / np.abs(diag))[:, None, :]
    block = np.block([[q.real, -q.imag], [q.imag, q.real]])
    perm = _interleave_permutation(dim)
    out = block[:, perm][:, :, perm]
    return out[0] if size is None else out


def _interleave_permutation(dim):
    return np.ravel([[k, dim + k] for k in range(dim)])


def random_symplectic(dim: int, rng: np.random.Generator, squeezing: float = 1.0,
                      size: int | None = None) -> np.ndarray:
    """Random symplectic matrices by Bloch-Messiah: ``O1 diag(e^r, e^-r) O2``.

    Squeezing parameters are drawn uniformly from ``[-squeezing, squeezing]``.
    """
    n = 1 if size is None else size
    r = rng.uniform(-squeezing, squeezing, (n, dim))
    squeeze = np.exp(np.stack([r, -r], axis=-1).reshape(n, 2 * dim))
    left = random_orthogonal_symplectic(dim, rng, n)
    right = random_orthogonal_symplectic(dim, rng, n)
    out = (left * squeeze[:, None, :]) @ right
    return out[0] if size is None else out


def random_covariance(dim: int, rng: np.random.Generator, squeezing: float = 1.0,
                      max_excess: float = 3.0) -> np.ndarray:
    """Random physical covariance: a squeezed, rotated product of thermal modes."""
    s = 0.5 + rng.uniform(0.0, max_excess, dim)
    lam = random_symplectic(dim, rng, squeezing)
    return lam @ np.diag(np.repeat(s, 2)) @ lam.T
