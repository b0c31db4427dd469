"""One charging cycle and the efficiency landscape.

Connecting the battery costs W_c, disconnecting costs W_d, and after
extraction the leftover T*Sigma is dissipated. The efficiency
eta = ergotropy / (W_c + W_d) peaks at an intermediate coupling.
"""

import numpy as np

from clbattery import SpectralDensity, cycle_energetics, n_copy_energetics

sd = SpectralDensity(gamma=1.0, omega0=2.0, omegac=4.0)

print(" gamma    W_c       W_d       ergotropy   eta      T*Sigma")
for gamma in (0.5, 2.0, 3.8, 8.0, 14.4):
    c = cycle_energetics(sd.with_gamma(gamma), 0.1)
    print(f"{gamma:5.1f}  {c.w_c:8.4f}  {c.w_d:8.4f}  {c.ergotropy:9.5f}  {c.efficiency:7.5f}  {c.t_sigma:8.4f}")

grid = np.linspace(0.5, 12, 47)
eta = [cycle_energetics(sd.with_gamma(g), 0.1).efficiency for g in grid]
print(f"\npeak on the grid: eta = {max(eta):.4f} at gamma = {grid[int(np.argmax(eta))]:.2f}")

# At T = 0 and omegac = omega0 the peak is the best the model offers,
# and it does not depend on the frequency unit.
for w0 in (1.0, 2.0, 5.0):
    c = cycle_energetics(SpectralDensity(5.944, w0, w0), 0.0)
    print(f"omega0 = omegac = {w0}: eta = {c.efficiency:.6f}")

# n batteries on one bath behave as one battery at coupling n * gamma.
weak = sd.with_gamma(0.1)
for n in (1, 4, 16):
    print(f"n = {n:2d}: eta = {n_copy_energetics(weak, n, 0.1).efficiency:.5f}")
