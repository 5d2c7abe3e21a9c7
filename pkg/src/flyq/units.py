"""Internal unit conventions and conversion helpers.

All scattering math runs in dimensionless internal units:

* incident energy  E = 1,
* incident wavelength  lambda = 1  (lengths are multiples of it),
* wavenumber  k = 2*pi,
* hbar = 1.

Every potential is stored as the ratio V/E, so no material constant enters
the core formulas.  The helpers below convert to laboratory units only for
reporting: given the incident energy in meV and the effective mass as a
multiple of the free-electron mass, they return the de Broglie wavelength
in microns, which scales every internal length.
"""

import math

from scipy.constants import electron_mass, elementary_charge, h

#: Incident wavenumber in internal units (lambda = 1).
K0 = 2.0 * math.pi


def wavelength_um(energy_mev: float, mstar: float = 1.0) -> float:
    """De Broglie wavelength h / sqrt(2 m E) in microns.

    ``energy_mev`` is the kinetic energy of the injected electron in meV and
    ``mstar`` the effective mass in units of the free-electron mass (for
    example 0.067 for GaAs).
    """
    if energy_mev <= 0:
        raise ValueError("energy must be positive")
    if mstar <= 0:
        raise ValueError("effective mass must be positive")
    energy_j = energy_mev * 1e-3 * elementary_charge
    p = math.sqrt(2.0 * mstar * electron_mass * energy_j)
    return h / p * 1e6


def length_to_um(length_lambda: float, energy_mev: float, mstar: float = 1.0) -> float:
    """Convert a length in internal wavelength units to microns."""
    return length_lambda * wavelength_um(energy_mev, mstar)
