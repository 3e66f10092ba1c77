from .loader import (
    RunConfigError,
    config_from_dict,
    config_hash,
    config_to_dict,
    emit_config,
    parse_config,
    parse_config_text,
    validate_config,
)
from .models import (
    REFERENCE_N_NP,
    ElectrodesSection,
    ElectrostaticsSection,
    NetworkSection,
    OutputSection,
    RunConfig,
    SamplingSection,
    SimulationSection,
    VoltagesSection,
)

__all__ = [
    "REFERENCE_N_NP",
    "ElectrodesSection",
    "ElectrostaticsSection",
    "NetworkSection",
    "OutputSection",
    "RunConfig",
    "RunConfigError",
    "SamplingSection",
    "SimulationSection",
    "VoltagesSection",
    "config_from_dict",
    "config_hash",
    "config_to_dict",
    "emit_config",
    "parse_config",
    "parse_config_text",
    "validate_config",
]
