"""Long-time covariance of an oscillator coupled to an Ohmic bath.

The stationary second moments follow from the bath response as

    sigma_ii = (1/pi) int_0^inf J(w) w^(2i-2) coth(w/2T) / |alpha(w)|^2 dw,

and two temperature-independent moments of the same kernel,
``(2/pi) int J / (w |alpha|^2) = 1/omega0^2`` and
``(2/pi) int w J / |alpha|^2 = 1``, provide an end-to-end check of the
quadrature. All four moments share a single adaptive partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate
from .spectral import (
    SpectralDensity,
    j_omega,
    omega_r_squared,
    real_alpha,
    real_alpha_slope,
    resonance_root,
)

# Below this fraction of omega0 the temperature is treated as zero.
ZERO_TEMPERATURE_RATIO = 1e-8
_SMALL_ARGUMENT = 1e-4


@dataclass(frozen=True)
class SteadyState:
    """Stationary position and momentum variances with diagnostics.

    ``err11``/``err22`` are quadrature error estimates. The sum-rule
    residuals are the relative violations of the two identities above;
    they are zero by definition for an uncoupled oscillator.
    """

    sigma11: float
    sigma22: float
    sigma12: float = 0.0
    err11: float = 0.0
    err22: float = 0.0
    sum_rule_1_residual: float = 0.0
    sum_rule_2_residual: float = 0.0

    @property
    def determinant(self) -> float:
        return self.sigma11 * self.sigma22 - self.sigma12**2

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.sigma11, self.sigma12], [self.sigma12, self.sigma22]])


def _omega_coth(w, temp):
    """``w * coth(w / 2T)``, finite at ``w = 0``; equals ``w`` at ``T = 0``."""
    if temp == 0:
        return w
    x = w / (2.0 * temp)
    small = w < _SMALL_ARGUMENT * temp
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = w / np.tanh(np.where(small, 1.0, x))
    return np.where(small, 2.0 * temp + w * w / (6.0 * temp), exact)


# Rounding in Re(alpha) limits the resolvable peak to a relative accuracy
# of about eps * w* / h, while the zero-width limit is off by about h / w*.
# Below this half-width ratio the second error is the smaller one.
NARROW_PEAK_RATIO = 1e-8


def _breakpoints(sd, temp, lo, hi):
    points = {sd.omega0, sd.omegac}
    if temp > 0:
        points.add(temp)
    # Strong coupling stiffens Re(alpha) over omegac * omega0 / omega_R.
    points.add(sd.omegac * sd.omega0 / math.sqrt(sd.omega0**2 + omega_r_squared(sd)))
    if sd.cutoff.decay <= 100:
        points.add(sd.omegac * sd.cutoff.decay)
    return sorted(p for p in points if lo < p < hi)


def _moments(sd, temp, config):
    """Integrate the four moments; returns (values, errors).

    Every moment has the form ``int q(w) (J/w) / (Re(alpha)^2 + J^2) dw``
    with a smooth weight ``q``. The resonance window ``[w*/2, 3w*/2]``
    around the zero ``w*`` of Re(alpha) uses ``w = w* + h tan(theta)``
    with ``h`` the peak half-width, which flattens the Lorentzian; the
    rest of the half-line is integrated directly.
    """
    scale = sd.gamma * sd.omega0
    f = sd.cutoff.function

    def weights(w):
        wcoth = _omega_coth(w, temp)
        return np.vstack([
            wcoth / math.pi,
            w * w * wcoth / math.pi,
            np.full(np.shape(w), 2.0 / math.pi),
            2.0 / math.pi * w * w,
        ])

    def integrand(w):
        j_over_w = scale * f(w / sd.omegac)
        denom = real_alpha(sd, w, config) ** 2 + (w * j_over_w) ** 2
        return weights(w) * (j_over_w / denom)

    root = resonance_root(sd, config)
    slope = abs(real_alpha_slope(sd, root, config))
    half_width = j_omega(sd, root) / slope if slope > 0 else root
    lo, hi = 0.5 * root, 1.5 * root

    total = np.zeros(4)
    error = np.zeros(4)
    for res in (
        integrate(integrand, 0.0, lo, _breakpoints(sd, temp, 0.0, lo), config),
        integrate(integrand, hi, math.inf, _breakpoints(sd, temp, hi, math.inf), config),
    ):
        total += res.value
        error += res.error_estimate

    if half_width >= NARROW_PEAK_RATIO * root:
        theta_lo = -math.atan((root - lo) / half_width)
        theta_hi = math.atan((hi - root) / half_width)

        def mapped(theta):
            t = np.tan(theta)
            w = root + half_width * t
            return integrand(w) * (half_width * (1.0 + t * t))

        magnitude = sd.omega0**2 + omega_r_squared(sd) + root**2
        noise = 10.0 * np.finfo(float).eps * magnitude / (half_width * slope)
        window = replace(config, rel_tol=max(config.rel_tol, noise))
        res = integrate(mapped, theta_lo, theta_hi, (0.0,), window)
        total += res.value
        error += res.error_estimate
    else:
        # J / (R^2 + J^2) -> pi delta(R) for a peak below rounding level.
        peak = math.pi * weights(np.array([root]))[:, 0] / (root * slope)
        total += peak
        error += peak * half_width / root
    return total, error


def _effective_temperature(sd, temp):
    if not temp >= 0 or not math.isfinite(temp):
        raise ValueError(f"temperature must be finite and >= 0, got {temp}")
    return 0.0 if temp < ZERO_TEMPERATURE_RATIO * sd.omega0 else float(temp)


def free_covariance(omega0: float, temp: float) -> tuple[float, float]:
    """Thermal ``(sigma11, sigma22)`` of an uncoupled oscillator."""
    if temp == 0:
        coth = 1.0
    else:
        x = omega0 / (2.0 * temp)
        coth = 1.0 / math.tanh(x) if x < 350 else 1.0
    return coth / (2.0 * omega0), coth * omega0 / 2.0


def steady_covariance(sd: SpectralDensity, temp: float,
                      config: QuadratureConfig = DEFAULT_CONFIG) -> SteadyState:
    """Stationary covariance of the bath-coupled oscillator.

    Args:
        sd: bath and oscillator parameters.
        temp: bath temperature, >= 0. Values below ``1e-8 * omega0`` use
            the zero-temperature kernel.
        config: quadrature tolerances.

    Raises:
        NonConvergence: the moment integrals did not meet tolerance; the
            exception carries the worst subinterval.
    """
    temp = _effective_temperature(sd, temp)
    if sd.gamma == 0:
        s11, s22 = free_covariance(sd.omega0, temp)
        return SteadyState(s11, s22)
    vals, errs = _moments(sd, temp, config)
    return SteadyState(
        sigma11=float(vals[0]),
        sigma22=float(vals[1]),
        sigma12=0.0,
        err11=float(errs[0]),
        err22=float(errs[1]),
        sum_rule_1_residual=float(abs(vals[2] * sd.omega0**2 - 1.0)),
        sum_rule_2_residual=float(abs(vals[3] - 1.0)),
    )


def sum_rule_residuals(sd: SpectralDensity,
                       config: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Violations of the two temperature-independent identities.

    Returns ``(|omega0^2 I1 - 1|, |I2 - 1|)`` with
    ``I1 = (2/pi) int J/(w |alpha|^2)`` and ``I2 = (2/pi) int w J/|alpha|^2``.
    """
    if not sd.gamma > 0:
        raise ValueError("sum rules need a coupled oscillator (gamma > 0)")
    vals, _ = _moments(sd, 0.0, config)
    return float(abs(vals[2] * sd.omega0**2 - 1.0)), float(abs(vals[3] - 1.0))
