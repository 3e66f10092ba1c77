"""Candidate tunnel events, the rate table and Gillespie-style selection.

Events index an extended potential vector ``[phi_0 .. phi_{N-1}, U_0 .. U_{K-1}]``
so NP-NP and NP-electrode hops share one expression::

    dF = e * (phi_ext[dst] - phi_ext[src]) + charging_cost
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..constants import ELEMENTARY_CHARGE
from ..electrostatics import CapacitanceModel
from ..topology import ElectrodeConfig, NetworkTopology
from .rates import EventDomainError, tunnel_rate
from .state import FrozenStateError, SimulationParams, SimulationState


@dataclass(frozen=True, eq=False)
class EventCatalog:
    """All candidate events of one network.

    Order: both directions of every junction pair (sorted), then for every
    electrode the NP-to-electrode and electrode-to-NP hop.
    """

    n_np: int
    sources: np.ndarray
    destinations: np.ndarray
    charging_cost: np.ndarray
    output_electrode: int
    electrode_labels: Tuple[str, ...]

    def __len__(self) -> int:
        return int(self.sources.shape[0])

    @property
    def n_electrodes(self) -> int:
        return len(self.electrode_labels)

    def node_label(self, node: int) -> str:
        if node < self.n_np:
            return f"np_{node}"
        return self.electrode_labels[node - self.n_np]

    def describe(self, event: int) -> Tuple[str, str]:
        return self.node_label(int(self.sources[event])), self.node_label(
            int(self.destinations[event])
        )

    def resistances(self, params: SimulationParams) -> np.ndarray:
        """Per-event junction resistance, uniform unless overridden by node pair."""

        values = np.full(len(self), params.resistance)
        for (a, b), resistance in params.junction_resistances.items():
            low, high = min(a, b), max(a, b)
            mask = (np.minimum(self.sources, self.destinations) == low) & (
                np.maximum(self.sources, self.destinations) == high
            )
            values[mask] = resistance
        return values

    @classmethod
    def build(
        cls,
        topology: NetworkTopology,
        electrodes: ElectrodeConfig,
        model: CapacitanceModel,
    ) -> "EventCatalog":
        n = topology.n_np
        inv = model.inverse
        half_e2 = 0.5 * ELEMENTARY_CHARGE**2
        sources, destinations, costs = [], [], []
        for i, j in topology.pairs:
            cost = half_e2 * (inv[i, i] + inv[j, j] - 2 * inv[i, j])
            sources.extend((i, j))
            destinations.extend((j, i))
            costs.extend((cost, cost))
        for k, np_index in enumerate(electrodes.attached):
            cost = half_e2 * inv[np_index, np_index]
            sources.extend((np_index, n + k))
            destinations.extend((n + k, np_index))
            costs.extend((cost, cost))
        return cls(
            n_np=n,
            sources=np.asarray(sources, dtype=np.intp),
            destinations=np.asarray(destinations, dtype=np.intp),
            charging_cost=np.asarray(costs, dtype=float),
            output_electrode=electrodes.output_index,
            electrode_labels=electrodes.labels,
        )


@dataclass(frozen=True, eq=False)
class EventTable:
    delta_f: np.ndarray
    rates: np.ndarray
    cdf: np.ndarray

    @property
    def k_tot(self) -> float:
        return float(self.cdf[-1]) if self.cdf.size else 0.0


def event_rates(
    catalog: EventCatalog,
    phi: np.ndarray,
    voltages: np.ndarray,
    params: SimulationParams,
    resistances: np.ndarray | None = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Free-energy changes (J) and rates (1/s) of every catalog event at potentials ``phi``."""

    phi_ext = np.concatenate((phi, voltages))
    delta_f = ELEMENTARY_CHARGE * (
        phi_ext[catalog.destinations] - phi_ext[catalog.sources]
    ) + catalog.charging_cost
    if resistances is None:
        resistances = catalog.resistances(params)
    return delta_f, tunnel_rate(delta_f, resistances, params.temperature)


def build_event_table(
    state: SimulationState,
    catalog: EventCatalog,
    voltages: np.ndarray,
    params: SimulationParams,
    resistances: np.ndarray | None = None,
) -> EventTable:
    """Recompute every rate from the current potentials and build the CDF.

    Args:
        state: Current simulation state; only ``phi`` is read.
        catalog: Candidate events of the network.
        voltages: Electrode potentials in volts, in catalog electrode order.
        params: Temperature and resistance settings.
        resistances: Optional precomputed per-event resistances.
    """

    delta_f, rates = event_rates(catalog, state.phi, voltages, params, resistances)
    return EventTable(delta_f=delta_f, rates=rates, cdf=np.cumsum(rates))


def select_event(table: EventTable, r1: float, frozen_rate: float = 0.0) -> int:
    """Index ``n`` with ``cdf[n-1] < r1 * k_tot <= cdf[n]`` by binary search.

    Raises:
        FrozenStateError: If ``k_tot`` does not exceed ``frozen_rate``.
        EventDomainError: If ``r1`` lies outside (0, 1].
    """

    if not 0.0 < r1 <= 1.0:
        raise EventDomainError(f"r1 must lie in (0, 1], got {r1}")
    k_tot = table.k_tot
    if not k_tot > frozen_rate:
        raise FrozenStateError(f"total rate {k_tot:.3e} 1/s, no event possible")
    index = int(np.searchsorted(table.cdf, r1 * k_tot, side="left"))
    return min(index, table.cdf.size - 1)


def advance_time(t: float, k_tot: float, r2: float) -> float:
    """Residence-time update ``t - ln(r2) / k_tot``."""

    if not 0.0 < r2 <= 1.0:
        raise EventDomainError(f"r2 must lie in (0, 1], got {r2}")
    if k_tot <= 0:
        raise FrozenStateError("cannot advance time with zero total rate")
    return t - float(np.log(r2)) / k_tot


def apply_event(
    state: SimulationState, model: CapacitanceModel, catalog: EventCatalog, event: int
) -> None:
    """Move one charge and update ``phi`` incrementally with the columns of ``C_inv``."""

    source = int(catalog.sources[event])
    destination = int(catalog.destinations[event])
    n = catalog.n_np
    if source < n:
        state.charges[source] -= 1
        state.phi -= ELEMENTARY_CHARGE * model.inverse[:, source]
    else:
        electrode = source - n
        state.injected[electrode] += 1
        if electrode == catalog.output_electrode:
            state.out_to_net += 1
    if destination < n:
        state.charges[destination] += 1
        state.phi += ELEMENTARY_CHARGE * model.inverse[:, destination]
    else:
        electrode = destination - n
        state.extracted[electrode] += 1
        if electrode == catalog.output_electrode:
            state.net_to_out += 1
    state.event_count += 1
