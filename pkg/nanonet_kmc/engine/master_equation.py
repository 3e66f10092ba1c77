"""Stationary solution of the charge-state Markov chain for very small networks.

The KMC loop samples the same continuous-time Markov chain; on one or two NPs
the chain can be enumerated on a truncated charge space and solved directly,
which gives exact reference currents.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..constants import ELEMENTARY_CHARGE
from ..electrostatics import CapacitanceModel, potentials
from ..topology import ElectrodeConfig, NetworkTopology
from .events import EventCatalog, event_rates
from .rates import EventDomainError
from .state import SimulationParams

LOGGER = logging.getLogger(__name__)

MAX_ORACLE_NPS = 3


@dataclass(frozen=True, eq=False)
class StationarySolution:
    states: np.ndarray
    probabilities: np.ndarray
    current: float

    def mean_charges(self) -> np.ndarray:
        return self.probabilities @ self.states


def stationary_current(
    topology: NetworkTopology,
    electrodes: ElectrodeConfig,
    model: CapacitanceModel,
    params: SimulationParams,
    voltages: Sequence[float],
    charge_limit: int = 3,
) -> StationarySolution:
    """Exact stationary output current on charges ``{-charge_limit..charge_limit}`` per NP.

    Transitions leaving the truncated space are dropped. The balance equations
    ``p Q = 0`` are solved with one row replaced by the normalisation ``sum(p) = 1``.

    Raises:
        EventDomainError: For networks larger than ``MAX_ORACLE_NPS``.
    """

    n = topology.n_np
    if n > MAX_ORACLE_NPS:
        raise EventDomainError(f"master equation limited to {MAX_ORACLE_NPS} NPs, got {n}")
    voltages = np.asarray(voltages, dtype=float)
    catalog = EventCatalog.build(topology, electrodes, model)
    output_node = n + catalog.output_electrode

    states = np.array(
        list(itertools.product(range(-charge_limit, charge_limit + 1), repeat=n)), dtype=np.int64
    )
    index: Dict[Tuple[int, ...], int] = {tuple(q): s for s, q in enumerate(states)}
    generator = np.zeros((len(states), len(states)))
    output_flow = np.zeros(len(states))

    for s, charges in enumerate(states):
        _, rates = event_rates(catalog, potentials(model, charges), voltages, params)
        for event, rate in enumerate(rates):
            source = int(catalog.sources[event])
            destination = int(catalog.destinations[event])
            target = charges.copy()
            if source < n:
                target[source] -= 1
            if destination < n:
                target[destination] += 1
            t = index.get(tuple(target))
            if t is None:
                continue
            generator[s, t] += rate
            if destination == output_node:
                output_flow[s] += rate
            elif source == output_node:
                output_flow[s] -= rate
    generator[np.diag_indices_from(generator)] = -generator.sum(axis=1)

    scale = np.abs(generator).max()
    system = (generator / scale).T
    system[-1, :] = 1.0
    rhs = np.zeros(len(states))
    rhs[-1] = 1.0
    probabilities = scipy.linalg.solve(system, rhs)
    probabilities = np.clip(probabilities, 0.0, None)
    probabilities /= probabilities.sum()

    current = float(ELEMENTARY_CHARGE * probabilities @ output_flow)
    LOGGER.debug("Stationary current %.4e A over %d charge states", current, len(states))
    return StationarySolution(states=states, probabilities=probabilities, current=current)
