import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clbattery.energetics import (
    cycle_energetics,
    energetics_from_steady,
    high_temperature_predictions,
    n_copy_energetics,
)
from clbattery.errors import ZeroDenominator
from clbattery.spectral import CutoffKind, SpectralDensity
from clbattery.steadystate import SteadyState
from clbattery.symplectic import gaussian_entropy, passive_covariance

LD = CutoffKind.lorentz_drude()
EXP = CutoffKind.exponential()


def test_reference_point(ld_battery):
    cyc = cycle_energetics(ld_battery.with_gamma(3.8), 0.1)
    assert cyc.efficiency == pytest.approx(0.065, abs=0.005)
    assert cyc.ergotropy == pytest.approx(0.7, abs=0.07)
    assert cyc.w_cd == cyc.w_c + cyc.w_d
    assert cyc.t_sigma == cyc.w_cd - cyc.ergotropy


def test_work_formulas_by_hand(ld_battery):
    cyc = cycle_energetics(ld_battery, 0.4)
    s11, s22 = cyc.steady.sigma11, cyc.steady.sigma22
    assert cyc.w_c == pytest.approx(16 / 4 * math.sqrt(s11 * s22), rel=1e-14)
    assert cyc.w_d == pytest.approx(-s22 + (4 + 8) * s11, rel=1e-13)
    assert cyc.ergotropy == pytest.approx(0.5 * (math.sqrt(s22) - 2 * math.sqrt(s11)) ** 2, rel=1e-13)
    assert cyc.beta_p == pytest.approx(math.atanh(1 / (2 * math.sqrt(s11 * s22))), rel=1e-13)


def test_optimal_point_at_zero_temperature():
    cyc = cycle_energetics(SpectralDensity(5.94, 2.0, 2.0, LD), 0.0)
    assert cyc.efficiency == pytest.approx(0.1019, abs=1e-3)


@given(st.floats(0.01, 30.0), st.floats(0.0, 10.0), st.sampled_from([LD, EXP]))
def test_cycle_invariants(gamma, temp, cutoff):
    sd = SpectralDensity(gamma, 2.0, 4.0, cutoff)
    cyc = cycle_energetics(sd, temp)
    assert cyc.ergotropy >= 0
    assert cyc.t_sigma >= -1e-9 * max(cyc.w_cd, 1.0)
    assert 0 <= cyc.efficiency <= 1 + 1e-9
    st_ = cyc.steady
    passive = passive_covariance(st_.sigma11, st_.sigma22, st_.sigma12, sd.omega0)
    assert gaussian_entropy(passive) == pytest.approx(gaussian_entropy(st_.as_matrix()), abs=1e-10)


def test_uncoupled_efficiency_is_nan():
    cyc = cycle_energetics(SpectralDensity(0.0, 2.0, 4.0), 0.5)
    assert math.isnan(cyc.efficiency)
    assert cyc.ergotropy == 0.0 and cyc.w_cd == 0.0


def test_zero_switching_work_is_reported(ld_battery):
    # A fabricated state with w_cd < 0 cannot come from the bath.
    steady = SteadyState(0.25, 20.0)
    with pytest.raises(ZeroDenominator):
        energetics_from_steady(ld_battery, steady)


def test_equipartition_input_has_no_ergotropy(ld_battery):
    cyc = energetics_from_steady(ld_battery, SteadyState(1.0, 4.0))
    assert cyc.ergotropy == 0.0 and cyc.efficiency == 0.0


def test_n_copies_map_onto_rescaled_coupling(ld_battery):
    assert n_copy_energetics(ld_battery.with_gamma(0.5), 3, 0.1) == cycle_energetics(ld_battery.with_gamma(1.5), 0.1)
    assert n_copy_energetics(ld_battery, 1, 0.1) == cycle_energetics(ld_battery, 0.1)


def test_collective_enhancement(ld_battery):
    single = cycle_energetics(ld_battery.with_gamma(0.1), 0.1)
    many = n_copy_energetics(ld_battery.with_gamma(0.1), 10, 0.1)
    assert many.efficiency > single.efficiency


@pytest.mark.parametrize("n", [0, -2, 1.5, True])
def test_n_copies_validation(ld_battery, n):
    with pytest.raises(ValueError):
        n_copy_energetics(ld_battery, n, 0.1)


def test_high_temperature(ld_battery):
    w_pred, order = high_temperature_predictions(ld_battery, 100.0)
    assert w_pred == pytest.approx(400.0)
    assert order == pytest.approx(1.6e-5)
    cyc = cycle_energetics(ld_battery, 100.0)
    assert cyc.w_cd == pytest.approx(w_pred, rel=0.05)
    assert cyc.ergotropy < 10 * order
    with pytest.raises(ValueError):
        high_temperature_predictions(ld_battery, 0.0)


def test_efficiency_drops_with_temperature(ld_battery):
    sd = ld_battery.with_gamma(5.0)
    assert cycle_energetics(sd, 100.0).efficiency < cycle_energetics(sd, 1.0).efficiency


def test_ultrastrong_scaling():
    sd = SpectralDensity(1.0, 1.0, 1.0, LD)
    gammas = np.geomspace(1e3, 1e5, 5)
    cycles = [cycle_energetics(sd.with_gamma(g), 0.0) for g in gammas]
    e_slope = np.polyfit(np.log(gammas), np.log([c.ergotropy for c in cycles]), 1)[0]
    eta_slope = np.polyfit(np.log(gammas), np.log([c.efficiency for c in cycles]), 1)[0]
    assert e_slope == pytest.approx(0.5, abs=0.02)
    assert eta_slope == pytest.approx(-0.5, abs=0.02)
