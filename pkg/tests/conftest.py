import numpy as np
import pytest
from hypothesis import settings

from clbattery.spectral import CutoffKind, SpectralDensity

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def ld_battery():
    """The reference battery: omega0=2, omegac=4, Lorentz-Drude, gamma=1."""
    return SpectralDensity(1.0, 2.0, 4.0, CutoffKind.lorentz_drude())
