from .electrodes import (
    ControlSeries,
    Electrode,
    ElectrodeConfig,
    ElectrodeConfigError,
    PlacementKind,
    PlacementPolicy,
    Role,
    canonical_positions,
    control_series_configs,
    control_series_layout,
    place_electrodes,
)
from .grid import NanoparticleSpec, NetworkTopology, TopologyError, build_grid, build_line

__all__ = [
    "ControlSeries",
    "Electrode",
    "ElectrodeConfig",
    "ElectrodeConfigError",
    "NanoparticleSpec",
    "NetworkTopology",
    "PlacementKind",
    "PlacementPolicy",
    "Role",
    "TopologyError",
    "build_grid",
    "build_line",
    "canonical_positions",
    "control_series_configs",
    "control_series_layout",
    "place_electrodes",
]
