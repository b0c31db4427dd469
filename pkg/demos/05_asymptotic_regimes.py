"""Weak, high-temperature and ultrastrong regimes against the full numerics.

Each regime has a closed or semi-analytic prediction. Comparing it to
the quadrature shows where the expansion is trustworthy.
"""

import warnings

import numpy as np

from clbattery import SpectralDensity, cycle_energetics, steady_covariance
from clbattery.asymptotics import (
    lorentz_drude_zero_temperature,
    phi_psi,
    ultrastrong_prediction,
    weak_coupling_correction,
    weak_coupling_energetics,
)
from clbattery.energetics import high_temperature_predictions

base = SpectralDensity(gamma=1.0, omega0=2.0, omegac=4.0)

print("weak coupling, T = 0.1")
for gamma in (1e-3, 1e-2, 0.1):
    sd = base.with_gamma(gamma)
    num = steady_covariance(sd, 0.1)
    lin = weak_coupling_correction(sd, 0.1)
    e_pred, w_pred = weak_coupling_energetics(sd, 0.1)
    cyc = cycle_energetics(sd, 0.1)
    print(f"  gamma={gamma:<6g} sigma11 {num.sigma11:.8f} vs {lin.sigma11_linear:.8f}   "
          f"E {cyc.ergotropy:.3e} vs {e_pred:.3e}   W_cd {cyc.w_cd:.4e} vs {w_pred:.4e}")

print("\nzero-temperature coefficients: generic integral vs Lorentz-Drude closed form")
for omegac in (1.0, 2.0, 8.0):
    sd = SpectralDensity(0.01, 2.0, omegac)
    print(f"  omega0/omegac={2 / omegac:<5g} {phi_psi(sd, 0.0)}  {lorentz_drude_zero_temperature(2 / omegac)}")

print("\nhigh temperature")
for temp in (10.0, 100.0):
    w_pred, order = high_temperature_predictions(base, temp)
    cyc = cycle_energetics(base, temp)
    print(f"  T={temp:<5g} W_cd {cyc.w_cd:.3f} vs {w_pred:.3f}   E {cyc.ergotropy:.2e} (scale {order:.1e})")

print("\nultrastrong coupling, omega0 = omegac = 1, T = 0")
unit = SpectralDensity(1.0, 1.0, 1.0)
for gamma in np.geomspace(1e3, 1e5, 3):
    num = steady_covariance(unit.with_gamma(gamma), 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pred = ultrastrong_prediction(unit, gamma)
    print(f"  gamma={gamma:<8g} sigma11 {num.sigma11:.5e} vs {pred.sigma11_pred:.5e}   "
          f"sigma22 {num.sigma22:.4f} vs {pred.sigma22_pred:.4f}   product {num.sigma11 * num.sigma22:.4f}")
# The position variance approaches its limit slowly: the product is
# still above 1/4 by a few percent at gamma = 1e4.
