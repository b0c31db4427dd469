"""Work balance of one steady charging cycle.

A cycle connects the battery (left in its passive state by the previous
extraction) to the bath, lets it relax to the steady state, disconnects
it and extracts the ergotropy. Switching the interaction on and off
costs work; what remains after extraction is dissipated. Only the
periodic regime is modelled, so the very first cycle's extra work does
not appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroDenominator
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .spectral import SpectralDensity, omega_r_squared
from .steadystate import SteadyState, steady_covariance
from .symplectic import passive_temperature, single_mode_ergotropy


@dataclass(frozen=True)
class CycleEnergetics:
    """Energetics of one steady cycle.

    Attributes:
        w_c: work spent connecting the battery to the bath.
        w_d: work spent disconnecting it.
        w_cd: total switching work ``w_c + w_d``.
        ergotropy: work extracted from the disconnected battery.
        efficiency: ``ergotropy / w_cd``; NaN for an uncoupled battery.
        t_sigma: dissipated work ``w_cd - ergotropy`` (temperature times
            entropy production), never negative.
        beta_p: inverse temperature of the passive state (``inf`` if pure).
        steady: the underlying steady state.
    """

    w_c: float
    w_d: float
    w_cd: float
    ergotropy: float
    efficiency: float
    t_sigma: float
    beta_p: float
    steady: SteadyState


def energetics_from_steady(sd: SpectralDensity, steady: SteadyState,
                           abs_tol: float = DEFAULT_CONFIG.abs_tol) -> CycleEnergetics:
    """Assemble the cycle from already computed steady moments.

    ``<q'' q>`` in the steady state equals ``-sigma22``, which fixes the
    disconnection work in terms of the two variances.
    """
    s11, s22 = steady.sigma11, steady.sigma22
    wr2 = omega_r_squared(sd)
    w0 = sd.omega0
    w_c = wr2 / (2.0 * w0) * math.sqrt(s11 * s22)
    w_d = -s22 + (w0 * w0 + 0.5 * wr2) * s11
    w_cd = w_c + w_d
    ergotropy = single_mode_ergotropy(s11, steady.sigma12, s22, w0)
    if sd.gamma == 0:
        efficiency = math.nan
    elif w_cd <= abs_tol:
        raise ZeroDenominator(f"switching work {w_cd:.3g} is below abs_tol; efficiency undefined")
    else:
        efficiency = ergotropy / w_cd
    return CycleEnergetics(
        w_c=w_c,
        w_d=w_d,
        w_cd=w_cd,
        ergotropy=ergotropy,
        efficiency=efficiency,
        t_sigma=w_cd - ergotropy,
        beta_p=passive_temperature(s11, s22, steady.sigma12, w0),
        steady=steady,
    )


def cycle_energetics(sd: SpectralDensity, temp: float,
                     config: QuadratureConfig = DEFAULT_CONFIG) -> CycleEnergetics:
    """Steady-cycle energetics for a battery coupled with ``sd`` at temperature ``temp``.

    Raises:
        ZeroDenominator: the switching work is below ``config.abs_tol``
            for a coupled battery.
        NonConvergence: propagated from the steady-state quadrature.
    """
    return energetics_from_steady(sd, steady_covariance(sd, temp, config), config.abs_tol)


def n_copy_energetics(sd: SpectralDensity, n: int, temp: float,
                      config: QuadratureConfig = DEFAULT_CONFIG) -> CycleEnergetics:
    """Energetics of ``n`` identical batteries sharing one bath.

    Only the centre-of-mass mode couples, with strength ``n * gamma``; the
    other ``n - 1`` normal modes never leave their passive state after the
    first cycle. The result is therefore the single-battery cycle at
    coupling ``n * gamma``.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return cycle_energetics(sd.with_gamma(int(n) * sd.gamma), temp, config)


def high_temperature_predictions(sd: SpectralDensity, temp: float) -> tuple[float, float]:
    """Leading high-temperature behaviour.

    Returns:
        ``(w_cd_pred, ergotropy_order)``: the equipartition switching work
        ``(omega_R^2 / omega0^2) T`` and the scale ``omega0^4 / T^3`` that
        bounds the ergotropy up to an order-one factor.
    """
    if not temp > 0:
        raise ValueError("temperature must be > 0")
    return omega_r_squared(sd) / sd.omega0**2 * temp, sd.omega0**4 / temp**3
