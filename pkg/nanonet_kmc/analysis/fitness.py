"""Logic-gate fitness of current quadruples ordered (I00, I10, I01, I11)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Tuple

import numpy as np

from .decomposition import Decomposition

SQRT_8_3 = math.sqrt(8.0 / 3.0)


class GateKind(str, Enum):
    AND = "AND"
    OR = "OR"
    NAND = "NAND"
    NOR = "NOR"
    XOR = "XOR"
    XNOR = "XNOR"

    @property
    def on(self) -> FrozenSet[int]:
        return _ON_SETS[self]

    @property
    def off(self) -> FrozenSet[int]:
        return frozenset(range(4)) - _ON_SETS[self]

    @property
    def mirror(self) -> "GateKind":
        return _MIRRORS[self]


_ON_SETS = {
    GateKind.AND: frozenset({3}),
    GateKind.OR: frozenset({1, 2, 3}),
    GateKind.NAND: frozenset({0, 1, 2}),
    GateKind.NOR: frozenset({0}),
    GateKind.XOR: frozenset({1, 2}),
    GateKind.XNOR: frozenset({0, 3}),
}

_MIRRORS = {
    GateKind.AND: GateKind.NAND,
    GateKind.NAND: GateKind.AND,
    GateKind.OR: GateKind.NOR,
    GateKind.NOR: GateKind.OR,
    GateKind.XOR: GateKind.XNOR,
    GateKind.XNOR: GateKind.XOR,
}


@dataclass(frozen=True)
class FitnessRecord:
    """``value`` is ``m / (sqrt(mse) + delta |c|)``; ``infinite`` marks a vanishing denominator."""

    gate: GateKind
    m: float
    mse: float
    c: float
    delta: float
    value: float
    infinite: bool = False


def _resolve(value: float, numerator: float, denominator: float) -> Tuple[float, bool]:
    if denominator > 0:
        return value, False
    if numerator == 0:
        return 0.0, False
    return math.copysign(math.inf, numerator), True


def fitness(currents, gate: GateKind | str, delta: float = 0.0) -> FitnessRecord:
    """Fitness of one current quadruple for ``gate``.

    Constant quadruples (``m = 0`` and ``MSE = 0``) score ``0`` rather than infinity.
    """

    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    gate = GateKind(gate)
    values = np.asarray(currents, dtype=float)
    if values.shape != (4,):
        raise ValueError(f"expected four currents, got shape {values.shape}")
    on = values[sorted(gate.on)]
    off = values[sorted(gate.off)]
    i_on, i_off = float(on.mean()), float(off.mean())
    m = i_on - i_off
    mse = 0.25 * (float(((on - i_on) ** 2).sum()) + float(((off - i_off) ** 2).sum()))
    denominator = math.sqrt(mse) + delta * abs(i_off)
    value = m / denominator if denominator > 0 else 0.0
    value, infinite = _resolve(value, m, denominator)
    return FitnessRecord(
        gate=gate, m=m, mse=mse, c=i_off, delta=delta, value=value, infinite=infinite
    )


@dataclass(frozen=True, eq=False)
class FitnessArrays:
    gate: GateKind
    delta: float
    m: np.ndarray
    mse: np.ndarray
    c: np.ndarray
    values: np.ndarray
    infinite: np.ndarray


def fitness_array(currents, gate: GateKind | str, delta: float = 0.0) -> FitnessArrays:
    """Vectorised :func:`fitness` over an ``(n, 4)`` array with the same edge-case rules."""

    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    gate = GateKind(gate)
    currents = np.asarray(currents, dtype=float).reshape(-1, 4)
    on = currents[:, sorted(gate.on)]
    off = currents[:, sorted(gate.off)]
    i_on = on.mean(axis=1)
    i_off = off.mean(axis=1)
    m = i_on - i_off
    mse = 0.25 * (
        ((on - i_on[:, None]) ** 2).sum(axis=1) + ((off - i_off[:, None]) ** 2).sum(axis=1)
    )
    denominator = np.sqrt(mse) + delta * np.abs(i_off)
    positive = denominator > 0
    values = np.zeros_like(m)
    values[positive] = m[positive] / denominator[positive]
    infinite = ~positive & (m != 0)
    values[infinite] = np.copysign(np.inf, m[infinite])
    return FitnessArrays(
        gate=gate, delta=delta, m=m, mse=mse, c=i_off, values=values, infinite=infinite
    )


def closed_form_fitness(decomposition: Decomposition, gate: GateKind | str) -> Tuple[float, bool]:
    """Fitness at ``delta = 0`` written in ``(M_l, M_r, X)``.

    Returns:
        ``(value, infinite)`` with the same zero-denominator convention as :func:`fitness`.
    """

    gate = GateKind(gate)
    a, b, x = decomposition.m_l, decomposition.m_r, decomposition.x
    if gate in (GateKind.AND, GateKind.NAND):
        numerator = SQRT_8_3 * (a + b + x)
        radicand = 0.5 * ((a - b) ** 2 + (a - x) ** 2 + (b - x) ** 2)
    elif gate in (GateKind.OR, GateKind.NOR):
        numerator = SQRT_8_3 * (a + b - x)
        radicand = 0.5 * ((a - b) ** 2 + (a + x) ** 2 + (b + x) ** 2)
    else:
        numerator = -2.0 * x
        radicand = a * a + b * b
    if gate in (GateKind.NAND, GateKind.NOR, GateKind.XNOR):
        numerator = -numerator
    denominator = math.sqrt(max(radicand, 0.0))
    value = numerator / denominator if denominator > 0 else 0.0
    return _resolve(value, numerator, denominator)
