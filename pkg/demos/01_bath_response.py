"""The bath seen by the battery: spectral density, response and resonance.

An oscillator of frequency omega0 couples to an Ohmic bath with cutoff
omegac. Everything downstream is built from the response denominator
alpha(w), whose real part carries the bath-induced frequency shift chi(w).
"""

import numpy as np

from clbattery import CutoffKind, SpectralDensity
from clbattery.spectral import chi, j_omega, resonance_root, resonance_width

ld = SpectralDensity(gamma=1.0, omega0=2.0, omegac=4.0, cutoff=CutoffKind.lorentz_drude())
exp = SpectralDensity(gamma=1.0, omega0=2.0, omegac=4.0, cutoff=CutoffKind.exponential())

# Both cutoffs integrate to pi, so they renormalise the frequency equally.
print(f"omega_R^2  Lorentz-Drude {ld.omega_r_squared:.6f}   exponential {exp.omega_r_squared:.6f}")

# The Lorentz-Drude response has a closed form; the principal-value
# quadrature path must reproduce it.
w = np.array([0.0, 1.0, 4.0, 40.0])
print("\n   w     J(w)      chi closed   chi quadrature")
for wi, ji, c1, c2 in zip(w, j_omega(ld, w), chi(ld, w, method="closed"), chi(ld, w, method="quadrature")):
    print(f"{wi:5.1f}  {ji:8.4f}  {c1:12.8f}  {c2:12.8f}")

# Where Re alpha vanishes the integrands peak. Weak coupling leaves the
# peak at omega0 and makes it narrow; strong coupling pushes it up.
print("\n gamma      root       half-width")
for gamma in (1e-4, 1e-2, 1.0, 10.0, 1e3):
    sd = ld.with_gamma(gamma)
    print(f"{gamma:7.0e}  {resonance_root(sd):10.5f}  {resonance_width(sd):10.3e}")
