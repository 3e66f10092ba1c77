"""Free-energy changes and orthodox tunnel rates."""

from __future__ import annotations

from enum import Enum

import numpy as np

from ..constants import BOLTZMANN, ELEMENTARY_CHARGE
from ..electrostatics import CapacitanceModel
from ..topology import Electrode

MIN_RATE = float(np.finfo(float).tiny)


class EventDomainError(ValueError):
    """Raised for events that do not exist on the network or bad random draws."""


class Direction(str, Enum):
    TO_ELECTRODE = "to_electrode"
    FROM_ELECTRODE = "from_electrode"


def free_energy_np_np(model: CapacitanceModel, phi: np.ndarray, i: int, j: int) -> float:
    """Free-energy change in joules for one charge hopping from NP ``i`` to NP ``j``.

    Raises:
        EventDomainError: If ``i`` and ``j`` share no junction.
    """

    if i == j or model.matrix[i, j] >= 0:
        raise EventDomainError(f"NPs {i} and {j} are not adjacent")
    inv = model.inverse
    cost = 0.5 * ELEMENTARY_CHARGE**2 * (inv[i, i] + inv[j, j] - 2 * inv[i, j])
    return float(ELEMENTARY_CHARGE * (phi[j] - phi[i]) + cost)


def free_energy_np_electrode(
    model: CapacitanceModel,
    phi: np.ndarray,
    i: int,
    u_e: float,
    direction: Direction | str,
    electrode: Electrode | None = None,
) -> float:
    """Free-energy change in joules for a hop between NP ``i`` and an electrode at ``u_e`` volts.

    Raises:
        EventDomainError: If ``electrode`` is given and is not attached to ``i``.
    """

    if electrode is not None and electrode.attached_np != i:
        raise EventDomainError(
            f"electrode {electrode.label} is attached to NP {electrode.attached_np}, not {i}"
        )
    cost = 0.5 * ELEMENTARY_CHARGE**2 * model.inverse[i, i]
    if Direction(direction) is Direction.TO_ELECTRODE:
        return float(ELEMENTARY_CHARGE * (u_e - phi[i]) + cost)
    return float(ELEMENTARY_CHARGE * (phi[i] - u_e) + cost)


def tunnel_rate(delta_f, resistance, temperature: float):
    """Orthodox rate ``(-dF / e**2 R) / (1 - exp(dF / k_B T))`` in 1/s.

    Evaluated as ``k_B T / (e**2 R) * g(x)`` with ``x = dF / k_B T`` and
    ``g(x) = x / (exp(x) - 1)``, using ``expm1`` on the favourable side and the
    ``exp(-x)`` form on the suppressed side so that neither overflows. ``g(0) = 1``.
    Rates that underflow are held at ``MIN_RATE`` so every finite ``delta_f`` stays positive.
    Accepts scalars or arrays; ``resistance`` may be an array matching ``delta_f``.
    """

    if temperature <= 0:
        raise EventDomainError(f"temperature must be positive, got {temperature}")
    if np.any(np.asarray(resistance) <= 0):
        raise EventDomainError("junction resistance must be positive")
    thermal = BOLTZMANN * temperature
    x = np.atleast_1d(np.asarray(delta_f, dtype=float)) / thermal
    g = np.ones_like(x)
    favourable = x < 0
    suppressed = x > 0
    g[favourable] = x[favourable] / np.expm1(x[favourable])
    xs = x[suppressed]
    g[suppressed] = xs * np.exp(-xs) / -np.expm1(-xs)
    rates = thermal / (ELEMENTARY_CHARGE**2 * np.asarray(resistance, dtype=float)) * g
    rates = np.maximum(rates, MIN_RATE)
    if np.ndim(delta_f) == 0:
        return float(np.ravel(rates)[0])
    return rates
