"""Unit conversions used throughout the package.

Internal unit system: energies in cm^-1, time in ps, field amplitudes in
V/cm at the user surface and atomic units internally, polarizabilities in
atomic units.  Everything that converts between these lives here.
"""

import math

# 1 cm^-1 corresponds to this many GHz (c in GHz*cm).
GHZ_PER_INVCM = 29.9792458

# Speed of light in cm/ps; the quantum phase of a state with energy E
# (cm^-1) advances as exp(-i * 2*pi*C_CM_PER_PS * E * t[ps]).
C_CM_PER_PS = 0.0299792458
TWO_PI_C = 2.0 * math.pi * C_CM_PER_PS  # rad/ps per cm^-1

# Atomic unit of electric field strength in V/cm.
FIELD_AU_IN_V_PER_CM = 5.14220675e9

# 1 hartree in cm^-1.
HARTREE_IN_INVCM = 219474.6314

# Atomic masses (u) for geometry handling.
ATOMIC_MASS_U = {
    "H": 1.00782503207,
    "D": 2.01410177785,
    "T": 3.01604927767,
    "C": 12.0,
    "N": 14.0030740048,
    "O": 15.9949146196,
    "F": 18.99840322,
    "S": 31.97207100,
    "Cl": 34.96885268,
}


def ghz_to_invcm(x):
    return x / GHZ_PER_INVCM


def invcm_to_ghz(x):
    return x * GHZ_PER_INVCM


def field_v_per_cm_to_au(e):
    return e / FIELD_AU_IN_V_PER_CM
