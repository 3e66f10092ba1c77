"""Event loop, equilibration and block-averaged current measurement."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from ..constants import ELEMENTARY_CHARGE
from ..electrostatics import CapacitanceModel
from ..topology import ElectrodeConfig, NetworkTopology
from .events import (
    EventCatalog,
    EventDomainError,
    advance_time,
    apply_event,
    build_event_table,
    select_event,
)
from .state import SimulationParams, SimulationState

LOGGER = logging.getLogger(__name__)

TRACE_COLUMNS = ("event_index", "time", "source", "destination", "delta_f", "rate")


class TerminationReason(str, Enum):
    UNCERTAINTY_REACHED = "uncertainty_reached"
    MAX_EVENTS = "max_events"
    ZERO_CURRENT = "zero_current"
    FROZEN_STATE = "frozen_state"


@dataclass(frozen=True)
class CurrentEstimate:
    """Output current in amperes; ``uncertainty`` is NaN when it is undefined."""

    current: float
    uncertainty: float
    blocks: Tuple[float, ...]
    termination: TerminationReason
    events: int
    time: float


class KineticMonteCarlo:
    """One sequential KMC run on a fixed voltage assignment.

    Args:
        topology: Network geometry.
        electrodes: Electrode layout; ``voltages`` follows its order.
        model: Capacitance model assembled for ``topology`` and ``electrodes``.
        params: Temperature, resistance and event budgets.
        voltages: Electrode potentials in volts.
        rng: Generator owned by this run.
        trace: Record every executed event for a CSV dump.
    """

    def __init__(
        self,
        topology: NetworkTopology,
        electrodes: ElectrodeConfig,
        model: CapacitanceModel,
        params: SimulationParams,
        voltages: Sequence[float],
        rng: np.random.Generator,
        trace: bool = False,
    ) -> None:
        voltages = np.asarray(voltages, dtype=float)
        if voltages.shape != (len(electrodes),):
            raise EventDomainError(
                f"expected {len(electrodes)} electrode voltages, got {voltages.shape}"
            )
        self.model = model
        self.params = params
        self.voltages = voltages
        self.catalog = EventCatalog.build(topology, electrodes, model)
        self.state = SimulationState.initial(model, len(electrodes), rng)
        self._resistances = self.catalog.resistances(params)
        self._trace: List[tuple] | None = [] if trace else None

    def step(self) -> bool:
        """Execute one event. Returns ``False`` and marks the state frozen if none is possible."""

        state = self.state
        table = build_event_table(
            state, self.catalog, self.voltages, self.params, self._resistances
        )
        k_tot = table.k_tot
        if not k_tot > self.params.frozen_rate:
            state.frozen = True
            return False
        event = select_event(table, state.uniform(), self.params.frozen_rate)
        state.time = advance_time(state.time, k_tot, state.uniform())
        if self._trace is not None:
            source, destination = self.catalog.describe(event)
            self._trace.append(
                (
                    state.event_count,
                    state.time,
                    source,
                    destination,
                    float(table.delta_f[event]),
                    float(table.rates[event]),
                )
            )
        apply_event(state, self.model, self.catalog, event)
        return True

    def equilibrate(self, n_events: int | None = None) -> bool:
        """Run ``n_events`` unrecorded events, then zero the clock and counters.

        Returns:
            ``True`` when the state froze during equilibration.
        """

        if n_events is None:
            n_events = self.params.equilibration_events
        if n_events < 0:
            raise EventDomainError(f"n_events must be >= 0, got {n_events}")
        for _ in range(n_events):
            if not self.step():
                break
        self.state.reset_counters()
        if self._trace is not None:
            self._trace.clear()
        return self.state.frozen

    def measure_current(self) -> CurrentEstimate:
        """Run blocks of events until the relative error or the event budget is reached."""

        params = self.params
        state = self.state
        blocks: List[float] = []
        termination: TerminationReason | None = None
        if state.frozen:
            termination = TerminationReason.FROZEN_STATE

        while termination is None:
            start_time = state.time
            start_jumps = state.net_output_jumps
            budget = min(params.block_events, params.max_events - state.event_count)
            for _ in range(budget):
                if not self.step():
                    break
            if state.frozen:
                termination = TerminationReason.FROZEN_STATE
                break
            elapsed = state.time - start_time
            jumps = state.net_output_jumps - start_jumps
            blocks.append(ELEMENTARY_CHARGE * jumps / elapsed if elapsed > 0 else 0.0)
            mean = float(np.mean(blocks))
            if len(blocks) >= params.min_blocks and mean != 0.0:
                if float(stats.sem(blocks)) / abs(mean) <= params.u_threshold:
                    termination = TerminationReason.UNCERTAINTY_REACHED
            if termination is None and state.event_count >= params.max_events:
                termination = (
                    TerminationReason.ZERO_CURRENT
                    if mean == 0.0
                    else TerminationReason.MAX_EVENTS
                )

        estimate = self._estimate(blocks, termination)
        LOGGER.debug(
            "Run finished (%s) after %d events: I=%.4e A, u=%.3g",
            termination.value,
            estimate.events,
            estimate.current,
            estimate.uncertainty,
        )
        return estimate

    def run(self) -> CurrentEstimate:
        self.equilibrate()
        return self.measure_current()

    def trace_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self._trace or [], columns=list(TRACE_COLUMNS))

    def _estimate(
        self, blocks: List[float], termination: TerminationReason
    ) -> CurrentEstimate:
        state = self.state
        if termination is TerminationReason.FROZEN_STATE or state.time <= 0:
            current = 0.0
        else:
            current = ELEMENTARY_CHARGE * state.net_output_jumps / state.time
        mean = float(np.mean(blocks)) if blocks else 0.0
        if len(blocks) >= 2 and mean != 0.0 and termination is not TerminationReason.FROZEN_STATE:
            uncertainty = float(stats.sem(blocks)) / abs(mean)
        else:
            uncertainty = float("nan")
        return CurrentEstimate(
            current=current,
            uncertainty=uncertainty,
            blocks=tuple(blocks),
            termination=termination,
            events=state.event_count,
            time=state.time,
        )
