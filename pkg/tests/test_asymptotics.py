import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clbattery.asymptotics import (
    g_infinity,
    low_temperature_correction,
    lorentz_drude_zero_temperature,
    phi_psi,
    shift_function,
    ultrastrong_prediction,
    weak_coupling_correction,
    weak_coupling_energetics,
)
from clbattery.energetics import cycle_energetics
from clbattery.errors import UnknownAsymptote
from clbattery.spectral import CutoffKind, SpectralDensity
from clbattery.steadystate import free_covariance, steady_covariance

LD = CutoffKind.lorentz_drude()
EXP = CutoffKind.exponential()
# Same function as Lorentz-Drude but routed through the generic code paths.
LD_GENERIC = CutoffKind.custom(lambda z: 2.0 / (1.0 + z * z), decay=1e6, name="ld-generic")


def test_closed_forms_at_unit_ratio():
    phi, psi = lorentz_drude_zero_temperature(1.0)
    assert phi == pytest.approx(-1.0, abs=1e-15)
    assert psi == pytest.approx(math.pi - 1.0, abs=1e-15)


def test_generic_integrals_at_unit_ratio():
    phi, psi = phi_psi(SpectralDensity(0.01, 2.0, 2.0, LD), 0.0)
    assert phi == pytest.approx(-1.0, abs=1e-6)
    assert psi == pytest.approx(math.pi - 1.0, abs=1e-6)


@pytest.mark.parametrize("omegac", [0.5, 1.0, 4.0, 10.0])
def test_closed_forms_match_generic_integrals(omegac):
    sd = SpectralDensity(0.01, 2.0, omegac, LD)
    phi, psi = phi_psi(sd, 0.0)
    closed_phi, closed_psi = lorentz_drude_zero_temperature(sd.reduced_frequency)
    assert phi == pytest.approx(closed_phi, abs=1e-7)
    assert psi == pytest.approx(closed_psi, abs=1e-7)


@pytest.mark.parametrize("temp", [0.0, 0.3, 1.0])
def test_closed_and_generic_bath_response_agree(temp):
    direct = phi_psi(SpectralDensity(0.01, 2.0, 4.0, LD), temp)
    generic = phi_psi(SpectralDensity(0.01, 2.0, 4.0, LD_GENERIC), temp)
    np.testing.assert_allclose(direct, generic, atol=1e-8)


def test_phi_continuous_at_zero_temperature():
    sd = SpectralDensity(0.01, 2.0, 2.0, LD)
    assert abs(phi_psi(sd, 1e-3 * sd.omega0)[0] - phi_psi(sd, 0.0)[0]) < 1e-3


@pytest.mark.parametrize("cutoff", [LD, EXP])
def test_linear_prediction_of_variances(cutoff):
    sd = SpectralDensity(0.01, 2.0, 4.0, cutoff)
    corr = weak_coupling_correction(sd, 0.1)
    num = steady_covariance(sd, 0.1)
    free = free_covariance(2.0, 0.1)
    assert (num.sigma11 - free[0]) / (corr.sigma11_linear - free[0]) == pytest.approx(1.0, abs=0.1)
    assert (num.sigma22 - free[1]) / (corr.sigma22_linear - free[1]) == pytest.approx(1.0, abs=0.1)
    assert corr.sigma11_linear == free[0] + 0.01 * corr.phi_t / (2 * math.pi * 2.0)


@pytest.mark.parametrize("cutoff", [LD, EXP])
def test_remainder_beyond_linear_is_superlinear(cutoff):
    def remainders(gamma):
        sd = SpectralDensity(gamma, 2.0, 4.0, cutoff)
        corr = weak_coupling_correction(sd, 0.1)
        num = steady_covariance(sd, 0.1)
        return np.abs([num.sigma11 - corr.sigma11_linear, num.sigma22 - corr.sigma22_linear]) / gamma

    assert np.all(remainders(0.005) < remainders(0.02))


def test_weak_energetics_against_full_cycle(ld_battery):
    sd = ld_battery.with_gamma(0.01)
    ergotropy, w_cd = weak_coupling_energetics(sd, 0.1)
    cyc = cycle_energetics(sd, 0.1)
    assert ergotropy == pytest.approx(cyc.ergotropy, rel=0.1)
    assert w_cd == pytest.approx(cyc.w_cd, rel=0.1)


@given(st.floats(1e-4, 0.1))
def test_weak_ergotropy_is_quadratic(gamma):
    sd = SpectralDensity(gamma, 2.0, 4.0, LD)
    e1, _ = weak_coupling_energetics(sd, 0.0)
    e2, _ = weak_coupling_energetics(sd.with_gamma(2 * gamma), 0.0)
    assert e2 == pytest.approx(4 * e1, rel=1e-12)


def test_weak_ergotropy_at_zero_temperature_has_unit_thermal_factor():
    sd = SpectralDensity(0.01, 2.0, 2.0, LD)
    ergotropy, _ = weak_coupling_energetics(sd, 0.0)
    phi, psi = phi_psi(sd, 0.0)
    assert ergotropy == pytest.approx(2.0 * 1e-4 * (phi - psi) ** 2 / (16 * math.pi**2), rel=1e-14)


def test_low_temperature_reduces_to_zero_temperature_expansion():
    sd = SpectralDensity(0.05, 2.0, 4.0, LD)
    corr = weak_coupling_correction(sd, 0.0)
    s11, s22 = low_temperature_correction(sd, 0.0)
    assert s11 == pytest.approx(corr.sigma11_linear, rel=1e-14)
    assert s22 == pytest.approx(corr.sigma22_linear, rel=1e-14)


def test_low_temperature_position_shift():
    sd = SpectralDensity(0.05, 2.0, 4.0, LD)
    shift = steady_covariance(sd, 0.2).sigma11 - steady_covariance(sd, 0.0).sigma11
    pred = low_temperature_correction(sd, 0.2)[0] - low_temperature_correction(sd, 0.0)[0]
    assert shift == pytest.approx(pred, rel=0.25)


def test_low_temperature_momentum_shift_is_quartic():
    sd = SpectralDensity(0.05, 2.0, 4.0, LD)
    base = steady_covariance(sd, 0.0).sigma22

    def bath_shift(t):
        # Remove the free oscillator's own (exponentially small) thermal shift.
        return steady_covariance(sd, t).sigma22 - base - (free_covariance(2.0, t)[1] - 1.0)

    assert 12 <= bath_shift(0.2) / bath_shift(0.1) <= 20


def test_regime_warnings():
    strong = SpectralDensity(0.5, 2.0, 4.0, LD)
    with pytest.warns(UserWarning):
        weak_coupling_correction(strong, 0.1)
    with pytest.warns(UserWarning):
        weak_coupling_energetics(strong, 0.1)
    with pytest.warns(UserWarning):
        low_temperature_correction(strong.with_gamma(0.01), 1.0)
    with pytest.warns(UserWarning):
        ultrastrong_prediction(strong, 10.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ultrastrong_prediction(strong, 1e4)


@pytest.mark.parametrize("cutoff", [LD, EXP])
def test_ultrastrong_prediction_values(cutoff):
    pred = ultrastrong_prediction(SpectralDensity(1.0, 1.0, 1.0, cutoff), 1e4)
    assert pred.g_infinity == 2.0
    assert pred.sigma11_pred == pytest.approx(1 / (2 * math.sqrt(2e4)), rel=1e-15)
    assert pred.sigma22_pred == pytest.approx(70.7106781, rel=1e-8)
    assert pred.sigma11_pred * pred.sigma22_pred == pytest.approx(0.25, rel=1e-15)
    assert pred.validity_gamma == 1.0


def test_ultrastrong_momentum_variance_against_quadrature():
    sd = SpectralDensity(1e4, 1.0, 1.0, LD)
    pred = ultrastrong_prediction(sd, 1e4)
    assert steady_covariance(sd, 0.0).sigma22 == pytest.approx(pred.sigma22_pred, rel=0.03)


def test_shift_function_limit():
    sd = SpectralDensity(1.0, 2.0, 4.0, LD)
    assert abs(shift_function(sd, 1e3 * sd.omegac) - 2 * sd.omegac / sd.omega0) < 1e-3
    assert shift_function(sd, 0.0) == pytest.approx(0.0, abs=1e-14)


def test_numerical_limit_for_custom_cutoff():
    sd = SpectralDensity(1.0, 2.0, 4.0, LD_GENERIC)
    assert g_infinity(sd) == pytest.approx(4.0, rel=1e-3)


def test_unknown_asymptote():
    slow = CutoffKind.custom(lambda z: (1.0 + z) ** -1.5, decay=10.0, name="slow")
    with pytest.raises(UnknownAsymptote):
        g_infinity(SpectralDensity(1.0, 1.0, 1.0, slow))


def test_bad_inputs():
    with pytest.raises(ValueError):
        lorentz_drude_zero_temperature(0.0)
    with pytest.raises(ValueError):
        phi_psi(SpectralDensity(0.01, 1.0, 1.0), -1.0)
    with pytest.raises(ValueError):
        ultrastrong_prediction(SpectralDensity(1.0, 1.0, 1.0), 0.0)
