"""CODATA constants shared by the electrostatics and the event engine."""

from __future__ import annotations

from dataclasses import dataclass

import scipy.constants as const

ELEMENTARY_CHARGE = const.e
BOLTZMANN = const.k
EPSILON_0 = const.epsilon_0
QUANTUM_RESISTANCE = const.h / const.e**2
NANOMETRE = const.nano
MILLIVOLT = const.milli
MEV = const.milli * const.e


@dataclass(frozen=True)
class PhysicalConstants:
    e: float = ELEMENTARY_CHARGE
    k_b: float = BOLTZMANN
    r_t: float = QUANTUM_RESISTANCE

    def thermal_energy(self, temperature: float) -> float:
        """k_B T in joules."""

        return self.k_b * temperature


CONSTANTS = PhysicalConstants()
