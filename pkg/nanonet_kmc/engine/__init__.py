from .events import (
    EventCatalog,
    EventTable,
    advance_time,
    apply_event,
    build_event_table,
    event_rates,
    select_event,
)
from .master_equation import StationarySolution, stationary_current
from .rates import (
    MIN_RATE,
    Direction,
    EventDomainError,
    free_energy_np_electrode,
    free_energy_np_np,
    tunnel_rate,
)
from .simulator import CurrentEstimate, KineticMonteCarlo, TerminationReason
from .state import FrozenStateError, SimulationParams, SimulationParamsError, SimulationState

__all__ = [
    "CurrentEstimate",
    "Direction",
    "EventCatalog",
    "EventDomainError",
    "EventTable",
    "FrozenStateError",
    "KineticMonteCarlo",
    "MIN_RATE",
    "SimulationParams",
    "SimulationParamsError",
    "SimulationState",
    "StationarySolution",
    "TerminationReason",
    "advance_time",
    "apply_event",
    "build_event_table",
    "event_rates",
    "free_energy_np_electrode",
    "free_energy_np_np",
    "select_event",
    "stationary_current",
    "tunnel_rate",
]
