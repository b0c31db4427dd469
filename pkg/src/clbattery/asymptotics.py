"""Asymptotic expansions in weak coupling, low temperature and ultrastrong coupling.

Weak coupling
-------------
To first order in ``gamma`` the steady variances are

    sigma11 = coth/(2 w0) + gamma * Phi_T / (2 pi w0)
    sigma22 = w0 coth / 2 + gamma * w0 * Psi_T / (2 pi)

with ``coth = coth(w0 / 2T)``. ``Phi_T`` and ``Psi_T`` are one functional
applied to two pairs of functions of ``x = 1 - (w / w0)^2``:

    Q[K, Y] = int_{-inf}^{-1} K(x)/x^2 dx - 2 K(0) - (pi/2) Y(0) - pi Y'(0)
              + int_0^1 (1 - b) [K'(b) - K'(-b)] / b db

with ``K = F coth(w/2T)``, ``F = f(w / omegac)`` and
``Y = coth(w/2T) g`` where ``g = (omega_R^2 - chi(w)) / (gamma w0^2)``.
``Phi_T = Q[K, Y]`` and ``Psi_T = Q[(1-x) K, (1-x) Y]``.

Ultrastrong coupling
--------------------
For ``gamma >> (omegac/omega0)^2`` the response concentrates on the
renormalised resonance ``w^2 = g_inf * gamma * w0^2`` with
``g_inf = lim_{w->inf} g(w)``, and the state approaches the pure squeezed
state ``sigma11 = 1/(2 w0 sqrt(g_inf gamma))``,
``sigma22 = w0 sqrt(g_inf gamma) / 2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import UnknownAsymptote
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate, integrate_semi_infinite
from .spectral import EXPONENTIAL, LORENTZ_DRUDE, SpectralDensity, chi, omega_r_squared
from .steadystate import free_covariance

WEAK_COUPLING_LIMIT = 0.3
LOW_TEMPERATURE_LIMIT = 0.3
_FD_STEP = 1e-3


@dataclass(frozen=True)
class WeakCouplingCorrection:
    """First-order coupling corrections and the resulting linear predictions."""

    phi_t: float
    psi_t: float
    sigma11_linear: float
    sigma22_linear: float


@dataclass(frozen=True)
class UltrastrongPrediction:
    """Leading ultrastrong-coupling variances.

    ``validity_gamma`` is ``(omegac / omega0)^2``; the prediction needs a
    coupling well above it.
    """

    g_infinity: float
    sigma11_pred: float
    sigma22_pred: float
    validity_gamma: float


def _coth(x):
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(x > 350, 1.0, 1.0 / np.tanh(np.minimum(x, 350)))


def shift_function(sd: SpectralDensity, omega, config: QuadratureConfig = DEFAULT_CONFIG):
    """``(omega_R^2 - chi(w)) / (gamma omega0^2)``, independent of ``gamma``."""
    unit = sd.with_gamma(1.0)
    val = (omega_r_squared(unit) - np.asarray(chi(unit, omega, config=config))) / sd.omega0**2
    return float(val) if np.ndim(omega) == 0 else val


def _fourth_order_derivative(fun, x, h):
    return (fun(x - 2 * h) - 8 * fun(x - h) + 8 * fun(x + h) - fun(x + 2 * h)) / (12 * h)


def _ingredients(sd, temp, config):
    """``K(x)`` and ``Y(x)`` as vectorized callables on ``x <= 1``."""
    w0 = sd.omega0

    def frequency(x):
        return w0 * np.sqrt(np.maximum(1.0 - np.asarray(x, dtype=float), 0.0))

    def thermal(x):
        if temp == 0:
            return np.ones(np.shape(x))
        return _coth(frequency(x) / (2.0 * temp))

    if sd.cutoff.name == LORENTZ_DRUDE:
        reduced = sd.reduced_frequency

        def shift(x):
            u = 1.0 - np.asarray(x, dtype=float)
            return 2.0 * reduced * u / (1.0 + reduced**2 * u)
    else:
        def shift(x):
            return shift_function(sd, frequency(x), config)

    def kernel(x):
        return sd.cutoff(frequency(x) / sd.omegac) * thermal(x)

    def response(x):
        return thermal(x) * shift(x)

    return kernel, response


def _functional(kernel, response, config):
    tail = integrate(lambda y: kernel(-y) / (y * y), 1.0, math.inf, (10.0,), config).value

    def quotient(b):
        # [K'(b) - K'(-b)] / b is even and tends to 2 K''(0); below the
        # step it is frozen at its value there, an O(step^3) error.
        b = np.asarray(b, dtype=float)
        gap = 1.0 - b
        even_at = np.maximum(b, _FD_STEP)
        h = np.minimum(_FD_STEP, np.maximum(gap, 1e-300) / 4.0)
        with np.errstate(all="ignore"):
            up = _fourth_order_derivative(kernel, even_at, h)
            down = _fourth_order_derivative(kernel, -even_at, h)
            out = gap * (up - down) / even_at
        # At b -> 1 the weight (1 - b) beats the K' blow-up of a thermal kernel.
        return np.where(gap > 1e-13, out, 0.0)

    inner = integrate(quotient, 0.0, 1.0, (_FD_STEP, 0.5), config).value
    slope = _fourth_order_derivative(response, 0.0, _FD_STEP)
    return float(
        tail - 2.0 * kernel(0.0) - 0.5 * math.pi * response(0.0) - math.pi * slope + inner
    )


def phi_psi(sd: SpectralDensity, temp: float,
            config: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """The two weak-coupling coefficients ``(Phi_T, Psi_T)``."""
    if not temp >= 0:
        raise ValueError("temperature must be >= 0")
    kernel, response = _ingredients(sd, temp, config)
    # Slightly looser than the default: finite differences floor near 1e-11.
    loose = QuadratureConfig(max(config.rel_tol, 1e-9), max(config.abs_tol, 1e-12),
                             config.max_subdivisions, config.truncation_factor)
    phi = _functional(kernel, response, loose)
    psi = _functional(lambda x: (1.0 - x) * kernel(x), lambda x: (1.0 - x) * response(x), loose)
    return phi, psi


def lorentz_drude_zero_temperature(reduced_frequency: float) -> tuple[float, float]:
    """Closed forms of ``(Phi_0, Psi_0)`` for the Lorentz-Drude cutoff.

    ``reduced_frequency`` is ``omega0 / omegac``. Both share the
    denominator ``(1 + r^2)^2``; writing ``(1 + r)^2`` for ``Phi_0`` agrees
    with the generic integral only at ``r = 1``.
    """
    r = reduced_frequency
    if not r > 0:
        raise ValueError("reduced frequency must be > 0")
    den = (1.0 + r * r) ** 2
    phi = (math.pi * r * (1 - r * r) - 2 * (1 + r * r) + 4 * r * r * math.log(r)) / den
    psi = (math.pi * r * (3 + r * r) - 2 * (1 + r * r) - 4 * math.log(r)) / den
    return phi, psi


def weak_coupling_correction(sd: SpectralDensity, temp: float,
                             config: QuadratureConfig = DEFAULT_CONFIG) -> WeakCouplingCorrection:
    """First-order coupling correction to the steady variances.

    Warns when ``gamma`` exceeds 0.3, where the expansion stops being
    quantitative.
    """
    if sd.gamma > WEAK_COUPLING_LIMIT:
        warnings.warn(f"gamma = {sd.gamma} is outside the weak-coupling regime", stacklevel=2)
    phi, psi = phi_psi(sd, temp, config)
    s11, s22 = free_covariance(sd.omega0, temp)
    return WeakCouplingCorrection(
        phi_t=phi,
        psi_t=psi,
        sigma11_linear=s11 + sd.gamma * phi / (2.0 * math.pi * sd.omega0),
        sigma22_linear=s22 + sd.gamma * sd.omega0 * psi / (2.0 * math.pi),
    )


def weak_coupling_energetics(sd: SpectralDensity, temp: float,
                             config: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Weak-coupling ergotropy and switching work.

    ``E = w0 gamma^2 (Phi - Psi)^2 / (16 pi^2 coth)`` and

        W_cd = w0 gamma [ (omegac/w0) fhat coth + (Phi - Psi)/(2 pi)
                          + gamma (omegac/w0) fhat (3 Phi + Psi)/(4 pi) ],

    where ``fhat = (1/pi) int f`` is integrated numerically. The last
    term is the first correction; without it the relative error is of
    order ``gamma``.

    Returns:
        ``(ergotropy_pred, w_cd_pred)``
    """
    if sd.gamma > WEAK_COUPLING_LIMIT:
        warnings.warn(f"gamma = {sd.gamma} is outside the weak-coupling regime", stacklevel=2)
    phi, psi = phi_psi(sd, temp, config)
    coth = 1.0 if temp == 0 else float(_coth(sd.omega0 / (2.0 * temp)))
    fhat = integrate_semi_infinite(sd.cutoff.function, [1.0], config).value / math.pi
    g, w0 = sd.gamma, sd.omega0
    ratio = sd.omegac / w0 * fhat
    ergotropy = w0 * g * g * (phi - psi) ** 2 / (16.0 * math.pi**2 * coth)
    w_cd = w0 * g * (
        ratio * coth + (phi - psi) / (2.0 * math.pi) + g * ratio * (3.0 * phi + psi) / (4.0 * math.pi)
    )
    return ergotropy, w_cd


def low_temperature_correction(sd: SpectralDensity, temp: float,
                               config: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Weak-coupling variances with the leading thermal corrections.

    The bath adds power-law thermal shifts on top of the exponentially
    small free-oscillator ones,

        d sigma11 = f(0) (pi / 3 w0) (T/w0)^2 gamma
        d sigma22 = f(0) (2 pi^3 / 15) w0 (T/w0)^4 gamma,

    which follow from expanding ``Phi_T - Phi_0 = f(0) (2 pi^2/3)(T/w0)^2``
    and ``Psi_T - Psi_0 = f(0) (4 pi^4/15)(T/w0)^4``.

    Returns:
        ``(sigma11_pred, sigma22_pred)``
    """
    if not temp >= 0:
        raise ValueError("temperature must be >= 0")
    if temp > LOW_TEMPERATURE_LIMIT * sd.omega0:
        warnings.warn(f"T = {temp} is not small against omega0 = {sd.omega0}", stacklevel=2)
    if sd.gamma > WEAK_COUPLING_LIMIT:
        warnings.warn(f"gamma = {sd.gamma} is outside the weak-coupling regime", stacklevel=2)
    phi0, psi0 = phi_psi(sd, 0.0, config)
    s11, s22 = free_covariance(sd.omega0, temp)
    w0, g, f0 = sd.omega0, sd.gamma, sd.cutoff.at_zero
    t = temp / w0
    sigma11 = s11 + g * phi0 / (2.0 * math.pi * w0) + f0 * math.pi / (3.0 * w0) * t**2 * g
    sigma22 = s22 + g * w0 * psi0 / (2.0 * math.pi) + f0 * 2.0 * math.pi**3 / 15.0 * w0 * t**4 * g
    return sigma11, sigma22


def g_infinity(sd: SpectralDensity, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """High-frequency limit of :func:`shift_function`.

    ``2 omegac / omega0`` for the built-in cutoffs. For a custom cutoff the
    limit is estimated at two large frequencies.

    Raises:
        UnknownAsymptote: ``z f(z)`` does not vanish at large ``z`` or the
            two estimates disagree by more than 1e-3.
    """
    if sd.cutoff.name in (LORENTZ_DRUDE, EXPONENTIAL):
        return 2.0 * sd.omegac / sd.omega0
    far = 1e3 * max(1.0, sd.cutoff.decay)
    z = np.array([far, 10 * far])
    tail = np.abs(z * sd.cutoff(z))
    if not (np.all(tail < 1e-3) and tail[1] <= tail[0]):
        raise UnknownAsymptote(f"z f(z) does not vanish at large z for cutoff {sd.cutoff.name!r}")
    near, further = shift_function(sd, z * sd.omegac, config)
    if not (math.isfinite(near) and math.isfinite(further)) or abs(near - further) > 1e-3 * abs(further):
        raise UnknownAsymptote(f"shift function has no clear limit for cutoff {sd.cutoff.name!r}")
    if not further > 0:
        raise UnknownAsymptote("high-frequency shift limit is not positive")
    return float(further)


def ultrastrong_prediction(sd: SpectralDensity, gamma_eval: float,
                           config: QuadratureConfig = DEFAULT_CONFIG) -> UltrastrongPrediction:
    """Ultrastrong-coupling variances at coupling ``gamma_eval``.

    Warns unless ``gamma_eval`` exceeds ten times ``(omegac/omega0)^2``.
    """
    if not gamma_eval > 0:
        raise ValueError("gamma_eval must be > 0")
    validity = (sd.omegac / sd.omega0) ** 2
    if gamma_eval < 10.0 * validity:
        warnings.warn(
            f"gamma = {gamma_eval} is not large against (omegac/omega0)^2 = {validity}",
            stacklevel=2,
        )
    g_inf = g_infinity(sd, config)
    root = math.sqrt(g_inf * gamma_eval)
    return UltrastrongPrediction(
        g_infinity=g_inf,
        sigma11_pred=1.0 / (2.0 * sd.omega0 * root),
        sigma22_pred=0.5 * sd.omega0 * root,
        validity_gamma=validity,
    )
