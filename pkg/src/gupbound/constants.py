"""CODATA 2018 values in SI units, for the hydrogen checks."""

import math

HBAR = 1.054571817e-34  # J s
ELECTRON_MASS = 9.1093837015e-31  # kg
ELEMENTARY_CHARGE = 1.602176634e-19  # C
VACUUM_PERMITTIVITY = 8.8541878128e-12  # F/m

#: e^2 / (4 pi eps0), the Gaussian-units e^2 for hydrogen (Z = 1), in J m
HYDROGEN_Z_E2 = ELEMENTARY_CHARGE**2 / (4.0 * math.pi * VACUUM_PERMITTIVITY)

BOHR_RADIUS = HBAR**2 / (ELECTRON_MASS * HYDROGEN_Z_E2)

#: default deformation scale in SI mode: minimal length of 1 pm
SI_DEFAULT_MIN_LENGTH = 1.0e-12
SI_DEFAULT_MU = HBAR / SI_DEFAULT_MIN_LENGTH
