"""Harmonic-oscillator quantum battery charged by an Ohmic (Caldeira-Leggett) bath.

Units are hbar = k_B = 1 throughout. The modules build on each other:

- ``quadrature``: adaptive Gauss-Kronrod integration and principal values.
- ``spectral``: the bath spectral density and its Kramers-Kronig response.
- ``symplectic``: Gaussian-state linear algebra and Gaussian ergotropy.
- ``steadystate``: the long-time covariance of the battery.
- ``energetics``: work, ergotropy and efficiency of one charging cycle.
- ``asymptotics``: weak, low-temperature and ultrastrong expansions.
"""

from .asymptotics import (
    UltrastrongPrediction,
    WeakCouplingCorrection,
    low_temperature_correction,
    ultrastrong_prediction,
    weak_coupling_correction,
    weak_coupling_energetics,
)
from .energetics import (
    CycleEnergetics,
    cycle_energetics,
    high_temperature_predictions,
    n_copy_energetics,
)
from .errors import CLBatteryError, NonConvergence
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    integrate_principal_value,
    integrate_semi_infinite,
)
from .spectral import (
    CutoffKind,
    SpectralDensity,
    alpha_abs_squared,
    chi,
    j_omega,
    omega_r_squared,
    resonance_root,
)
from .steadystate import SteadyState, steady_covariance, sum_rule_residuals
from .symplectic import (
    CovarianceMatrix,
    QuadraticHamiltonian,
    WilliamsonDecomposition,
    canonical_two_mode_energy_check,
    gaussian_entropy,
    gaussian_ergotropy,
    optimal_symplectic,
    passive_covariance,
    passive_temperature,
    single_mode_ergotropy,
    symplectic_eigenvalues,
    williamson,
)

__version__ = "0.1.0"
