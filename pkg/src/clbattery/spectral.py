"""Ohmic bath description: spectral density, frequency shift and response.

A bath is characterised by ``J(w) = gamma * omega0 * w * f(w / omegac)``
with a dimensionless cutoff function ``f``. Everything else here follows
from ``J`` by Kramers-Kronig: the renormalisation frequency ``omega_R``,
the real part ``chi`` of the bath response and the response denominator
``|alpha|^2`` that appears in every steady-state moment.

All frequency functions accept scalars or numpy arrays and return the
same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DivergentRenormalization, NegativeFrequency, NonConvergence, NonFiniteIntegrand
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    integrate_principal_value,
    integrate_semi_infinite,
)

LORENTZ_DRUDE = "lorentz-drude"
EXPONENTIAL = "exponential"
CUSTOM = "custom"


def _lorentz_drude(z):
    return 2.0 / (1.0 + z * z)


def _exponential(z):
    return math.pi * np.exp(-z)


@dataclass(frozen=True)
class CutoffKind:
    """Dimensionless cutoff function ``f(z)`` with ``z = w / omegac``.

    Use the ``lorentz_drude()``, ``exponential()`` or ``custom(...)``
    constructors. ``integral`` caches the integral of ``f`` over
    ``(0, inf)``; ``decay`` is a point (in units of ``z``) past which
    ``f`` is negligible and serves as a quadrature breakpoint.
    """

    name: str
    function: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    at_zero: float
    integral: float
    decay: float

    @classmethod
    def lorentz_drude(cls) -> "CutoffKind":
        return cls(LORENTZ_DRUDE, _lorentz_drude, 2.0, math.pi, 1e6)

    @classmethod
    def exponential(cls) -> "CutoffKind":
        return cls(EXPONENTIAL, _exponential, math.pi, math.pi, 30.0)

    @classmethod
    def custom(cls, function, decay, name=CUSTOM, config=DEFAULT_CONFIG) -> "CutoffKind":
        """Register a user cutoff.

        Args:
            function: vectorized ``f(z)``, finite and non-negative on ``z >= 0``.
            decay: ``z`` beyond which ``f(z) < 1e-12``.
            name: label used in output metadata.

        Raises:
            ValueError: ``f(0) <= 0`` or a non-positive decay bound.
            DivergentRenormalization: the integral of ``f`` does not converge.
        """
        if not decay > 0:
            raise ValueError(f"decay bound must be positive, got {decay}")
        at_zero = float(np.asarray(function(np.array([0.0])), dtype=float)[0])
        if not at_zero > 0:
            raise ValueError(f"cutoff must satisfy f(0) > 0, got {at_zero}")
        try:
            res = integrate_semi_infinite(function, [decay], config)
        except (NonConvergence, NonFiniteIntegrand) as exc:
            raise DivergentRenormalization(
                f"integral of cutoff {name!r} does not converge: {exc}"
            ) from exc
        if not math.isfinite(res.value):
            raise DivergentRenormalization(f"integral of cutoff {name!r} is not finite")
        return cls(name, function, at_zero, float(res.value), float(decay))

    @classmethod
    def from_name(cls, name: str) -> "CutoffKind":
        key = name.lower().replace("_", "-")
        if key in ("lorentz-drude", "lorentzdrude", "ld", "lorentz"):
            return cls.lorentz_drude()
        if key in ("exponential", "exp"):
            return cls.exponential()
        raise ValueError(f"unknown cutoff {name!r}; use 'lorentz-drude' or 'exponential'")

    def __call__(self, z):
        return self.function(z)


@dataclass(frozen=True)
class SpectralDensity:
    """Ohmic bath coupled to an oscillator of frequency ``omega0``.

    Attributes:
        gamma: dimensionless coupling strength, >= 0.
        omega0: bare oscillator frequency, > 0.
        omegac: bath cutoff frequency, > 0.
        cutoff: shape of the high-frequency cutoff.
    """

    gamma: float
    omega0: float
    omegac: float
    cutoff: CutoffKind = field(default_factory=CutoffKind.lorentz_drude)

    def __post_init__(self):
        if not (self.gamma >= 0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be finite and >= 0, got {self.gamma}")
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be finite and > 0, got {self.omega0}")
        if not (self.omegac > 0 and math.isfinite(self.omegac)):
            raise ValueError(f"omegac must be finite and > 0, got {self.omegac}")

    @property
    def omega_r_squared(self) -> float:
        return omega_r_squared(self)

    @property
    def reduced_frequency(self) -> float:
        """``omega0 / omegac``."""
        return self.omega0 / self.omegac

    def with_gamma(self, gamma: float) -> "SpectralDensity":
        return SpectralDensity(gamma, self.omega0, self.omegac, self.cutoff)


def _check_frequency(omega):
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0) or np.any(np.isnan(w)):
        raise NegativeFrequency(f"frequency must be >= 0, got {omega!r}")
    return w


def _like(value, omega):
    return float(value) if np.ndim(omega) == 0 else value


def j_omega(sd: SpectralDensity, omega):
    """Spectral density ``gamma * omega0 * w * f(w / omegac)``."""
    w = _check_frequency(omega)
    return _like(sd.gamma * sd.omega0 * w * sd.cutoff(w / sd.omegac), omega)


def omega_r_squared(sd: SpectralDensity) -> float:
    """Frequency renormalisation ``(2 gamma omega0 omegac / pi) * int f``.

    Equals ``2 gamma omega0 omegac`` for both built-in cutoffs, whose
    integral is pi.
    """
    return 2.0 * sd.gamma * sd.omega0 * sd.omegac * sd.cutoff.integral / math.pi


def _chi_closed(sd, w):
    return omega_r_squared(sd) / (1.0 + (w / sd.omegac) ** 2)


def _chi_quadrature(sd, w, config):
    # Odd extension of J splits the transform into a regular part with
    # (z + x) and a principal value with (z - x), x = w / omegac.
    flat = np.atleast_1d(w).astype(float).ravel()
    x = flat / sd.omegac
    out = np.full(flat.shape, omega_r_squared(sd))
    inside = x > 0
    if np.any(inside) and sd.gamma > 0:
        xs = x[inside]
        f = sd.cutoff.function

        def weight(z):
            return z * f(z)

        def regular(z):
            return weight(z)[None, :] / (z[None, :] + xs[:, None])

        reg = integrate_semi_infinite(regular, [1.0, sd.cutoff.decay], config).value
        pv = integrate_principal_value(weight, xs, config).value
        out[inside] = sd.gamma * sd.omega0 * sd.omegac / math.pi * (np.atleast_1d(reg) + pv)
    elif sd.gamma == 0:
        out[:] = 0.0
    return out.reshape(np.shape(w))


def chi(sd: SpectralDensity, omega, method: str = "auto", config: QuadratureConfig = DEFAULT_CONFIG):
    """Real part of the bath response, ``(1/pi) PV int J(w')/(w' - w) dw'``.

    ``J`` is extended oddly to negative frequencies, so ``chi(0)`` equals
    ``omega_R^2``.

    Args:
        method: ``"closed"`` for the Lorentz-Drude formula,
            ``"quadrature"`` for the principal-value route, ``"auto"``
            picks the closed form whenever it exists.
    """
    w = _check_frequency(omega)
    if method == "auto":
        method = "closed" if sd.cutoff.name == LORENTZ_DRUDE else "quadrature"
    if method == "closed":
        if sd.cutoff.name != LORENTZ_DRUDE:
            raise ValueError("closed-form chi is only available for the Lorentz-Drude cutoff")
        return _like(_chi_closed(sd, w), omega)
    if method == "quadrature":
        return _like(_chi_quadrature(sd, w, config), omega)
    raise ValueError(f"unknown method {method!r}")


def real_alpha(sd: SpectralDensity, omega, config: QuadratureConfig = DEFAULT_CONFIG):
    """``omega0^2 - w^2 + omega_R^2 - chi(w)``, the real part of the response denominator."""
    w = _check_frequency(omega)
    val = sd.omega0**2 - w**2 + omega_r_squared(sd) - np.asarray(chi(sd, w, config=config))
    return _like(val, omega)


def alpha_abs_squared(sd: SpectralDensity, omega, config: QuadratureConfig = DEFAULT_CONFIG):
    """``|alpha(w)|^2 = (omega0^2 - w^2 + omega_R^2 - chi)^2 + J^2``."""
    w = _check_frequency(omega)
    re = np.asarray(real_alpha(sd, w, config))
    im = np.asarray(j_omega(sd, w))
    return _like(re * re + im * im, omega)


def resonance_root(sd: SpectralDensity, config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Lowest positive zero of ``real_alpha``, or ``omega0`` if none is bracketed.

    A log-spaced scan up to twice the renormalised frequency locates the
    first sign change, which Brent's method then polishes.
    """
    if sd.gamma == 0:
        return sd.omega0
    top = 2.0 * math.sqrt(sd.omega0**2 + omega_r_squared(sd)) + sd.omegac
    grid = np.geomspace(1e-3 * min(sd.omega0, sd.omegac), top, 400)
    vals = np.asarray(real_alpha(sd, grid, config))
    flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if flips.size == 0:
        return sd.omega0
    i = int(flips[0])
    if vals[i] == 0:
        return float(grid[i])
    return float(brentq(lambda w: real_alpha(sd, w, config), grid[i], grid[i + 1],
                        xtol=1e-14 * grid[i + 1], rtol=1e-13))


def real_alpha_slope(sd: SpectralDensity, omega: float,
                     config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``d real_alpha / dw`` by a fourth-order central difference."""
    h = 1e-3 * min(omega, sd.omegac) if omega > 0 else 1e-3 * sd.omegac
    pts = np.array([omega - 2 * h, omega - h, omega + h, omega + 2 * h])
    if pts[0] < 0:
        pts = np.array([omega, omega + h, omega + 2 * h])
        v = np.asarray(real_alpha(sd, pts, config))
        return float((-3 * v[0] + 4 * v[1] - v[2]) / (2 * h))
    v = np.asarray(real_alpha(sd, pts, config))
    return float((v[0] - 8 * v[1] + 8 * v[2] - v[3]) / (12 * h))


def resonance_width(sd: SpectralDensity, root: float | None = None,
                    config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Half-width of the response peak near the resonance root.

    Linearising ``real_alpha`` around its zero, ``|alpha|^2`` is Lorentzian
    with half-width ``J / |d real_alpha / dw|``. Returns ``inf`` for an
    uncoupled oscillator.
    """
    if sd.gamma == 0:
        return math.inf
    if root is None:
        root = resonance_root(sd, config)
    slope = real_alpha_slope(sd, root, config)
    if slope == 0:
        return root
    return float(j_omega(sd, root) / abs(slope))
