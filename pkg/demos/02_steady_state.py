"""Steady-state covariance and the two sum rules that validate it.

The battery relaxes to a Gaussian state with position and momentum
variances sigma11 and sigma22. Two temperature-independent identities
(the sum rules) must hold for any coupling; their residuals are the
end-to-end check on the quadrature.
"""

from clbattery import SpectralDensity, steady_covariance, sum_rule_residuals
from clbattery.steadystate import free_covariance

sd = SpectralDensity(gamma=1.0, omega0=2.0, omegac=4.0)

print(" T      sigma11     sigma22     free sigma11  free sigma22")
for temp in (0.0, 0.1, 1.0, 10.0):
    st = steady_covariance(sd, temp)
    f11, f22 = free_covariance(sd.omega0, temp)
    print(f"{temp:4.1f}  {st.sigma11:10.6f}  {st.sigma22:10.6f}  {f11:12.6f}  {f22:12.6f}")

print("\nsum-rule residuals across couplings")
for gamma in (0.1, 1.0, 10.0, 1e4):
    r1, r2 = sum_rule_residuals(sd.with_gamma(gamma))
    print(f"  gamma={gamma:<8g} {r1:.1e}  {r2:.1e}")

# At high temperature both energies approach equipartition.
st = steady_covariance(sd, 100.0)
print(f"\nT=100: omega0^2 sigma11 / T = {sd.omega0**2 * st.sigma11 / 100:.5f}, sigma22 / T = {st.sigma22 / 100:.5f}")
