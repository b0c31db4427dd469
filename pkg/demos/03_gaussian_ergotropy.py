"""Gaussian ergotropy: how much work a symplectic unitary can extract.

The Williamson form sigma = L s L^T separates a covariance into its
symplectic spectrum s (entropy, passivity) and a symplectic frame L.
The extractable work is the energy above the passive state that shares
the spectrum, and an explicit symplectic reaches it.
"""

import numpy as np

from clbattery.symplectic import (
    QuadraticHamiltonian,
    gaussian_entropy,
    gaussian_ergotropy,
    optimal_symplectic,
    random_covariance,
    random_symplectic,
    symplectic_form,
    williamson,
)

rng = np.random.default_rng(7)
sigma = random_covariance(2, rng, squeezing=1.0)
ham = QuadraticHamiltonian.oscillators(1.0, 2.5).matrix

dec = williamson(sigma)
j = symplectic_form(2)
print("symplectic spectrum", dec.spectrum)
print("|L J L^T - J|      ", np.linalg.norm(dec.lam @ j @ dec.lam.T - j))
print("|L s L^T - sigma|  ", np.linalg.norm(dec.reconstruct() - sigma))

energy = 0.5 * np.trace(sigma @ ham)
work = gaussian_ergotropy(sigma, ham)
lam = optimal_symplectic(sigma, ham)
after = lam @ sigma @ lam.T
print(f"\nenergy {energy:.6f}, ergotropy {work:.6f}")
print(f"energy after optimal symplectic {0.5 * np.trace(after @ ham):.6f} (target {energy - work:.6f})")
print(f"entropy before {gaussian_entropy(sigma):.10f}, after {gaussian_entropy(after):.10f}")

# No other symplectic does better.
trials = random_symplectic(2, rng, size=10_000)
energies = 0.5 * np.einsum("nij,ji->n", trials @ sigma @ np.swapaxes(trials, 1, 2), ham)
print(f"best of 10^4 random symplectics: {energies.min():.6f}")
