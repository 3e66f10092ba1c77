"""Simulation parameters and the mutable per-run state."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from ..constants import QUANTUM_RESISTANCE
from ..electrostatics import CapacitanceModel

DEFAULT_FROZEN_RATE = 1e-9


class SimulationParamsError(ValueError):
    """Raised when temperature, resistance or event budgets are out of range."""


class FrozenStateError(RuntimeError):
    """Raised when the total rate vanishes and no event can be selected."""


@dataclass(frozen=True)
class SimulationParams:
    """Run parameters. Event budgets count tunnel events, times are in seconds.

    ``junction_resistances`` overrides the uniform ``resistance`` for a pair of
    extended node indices (NPs first, then electrodes).
    """

    temperature: float
    resistance: float = 25e6
    equilibration_events: int = 10_000
    u_threshold: float = 0.05
    max_events: int = 10_000_000
    block_events: int = 5_000
    min_blocks: int = 10
    frozen_rate: float = DEFAULT_FROZEN_RATE
    junction_resistances: Dict[Tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        violations = self.violations()
        if violations:
            raise SimulationParamsError("; ".join(violations))

    def violations(self) -> list[str]:
        problems = []
        if not self.temperature > 0:
            problems.append(f"temperature must be > 0 K, got {self.temperature}")
        resistances = [self.resistance, *self.junction_resistances.values()]
        for resistance in resistances:
            if not resistance > 10 * QUANTUM_RESISTANCE:
                problems.append(
                    f"resistance {resistance:.4g} Ohm violates R > 10 R_t "
                    f"({10 * QUANTUM_RESISTANCE:.4g} Ohm)"
                )
        if not 0 < self.u_threshold < 1:
            problems.append(f"u_threshold must lie in (0, 1), got {self.u_threshold}")
        if self.equilibration_events < 0:
            problems.append("equilibration_events must be >= 0")
        if self.block_events < 1 or self.min_blocks < 2:
            problems.append("block_events must be >= 1 and min_blocks >= 2")
        if self.max_events < self.block_events:
            problems.append("max_events must be at least one block")
        if self.frozen_rate < 0:
            problems.append("frozen_rate must be >= 0")
        return problems


@dataclass
class SimulationState:
    """Charges (units of e), potentials (V), clock and jump counters of one run.

    ``injected[k]`` counts charges that entered the network from electrode ``k``
    and ``extracted[k]`` those that left into it.
    """

    charges: np.ndarray
    phi: np.ndarray
    rng: np.random.Generator
    time: float = 0.0
    event_count: int = 0
    net_to_out: int = 0
    out_to_net: int = 0
    injected: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    extracted: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    frozen: bool = False

    @classmethod
    def initial(
        cls, model: CapacitanceModel, n_electrodes: int, rng: np.random.Generator
    ) -> "SimulationState":
        return cls(
            charges=np.zeros(model.n_np, dtype=np.int64),
            phi=np.zeros(model.n_np),
            rng=rng,
            injected=np.zeros(n_electrodes, dtype=np.int64),
            extracted=np.zeros(n_electrodes, dtype=np.int64),
        )

    def reset_counters(self) -> None:
        self.time = 0.0
        self.event_count = 0
        self.net_to_out = 0
        self.out_to_net = 0
        self.injected[:] = 0
        self.extracted[:] = 0

    @property
    def net_output_jumps(self) -> int:
        return self.net_to_out - self.out_to_net

    def uniform(self) -> float:
        """Uniform draw on (0, 1]."""

        return 1.0 - float(self.rng.random())
