"""YAML run-config parsing with collected violations, and the inverse emitter."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import MISSING, fields
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping

import yaml

from ..electrostatics import (
    MIN_SERIES_TERMS,
    CapacitanceDomainError,
    SingularCapacitanceError,
    assemble_capacitance_matrix,
)
from ..engine import SimulationParamsError
from ..topology import ElectrodeConfigError, PlacementKind, Role, TopologyError
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

LOGGER = logging.getLogger(__name__)

WEAK_BLOCKADE_RATIO = 100.0

SECTIONS = {
    "network": NetworkSection,
    "electrostatics": ElectrostaticsSection,
    "electrodes": ElectrodesSection,
    "simulation": SimulationSection,
    "voltages": VoltagesSection,
    "sampling": SamplingSection,
    "output": OutputSection,
}
REQUIRED_SECTIONS = ("network", "electrostatics", "simulation")


class RunConfigError(ValueError):
    """Raised with every violation found in a run config."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("invalid run config: " + "; ".join(self.violations))


def _as_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"expected an integer, got {value!r}")
    return value


def _as_float(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"expected a number, got {value!r}")
    return float(value)


def _as_bool(value: Any) -> bool:
    if not isinstance(value, bool):
        raise TypeError(f"expected true/false, got {value!r}")
    return value


def _as_str(value: Any) -> str:
    if not isinstance(value, str):
        raise TypeError(f"expected a string, got {value!r}")
    return value


def _as_float_tuple(value: Any) -> tuple:
    if not isinstance(value, list):
        raise TypeError(f"expected a list of numbers, got {value!r}")
    return tuple(_as_float(item) for item in value)


def _as_positions(value: Any) -> tuple:
    if not isinstance(value, list):
        raise TypeError(f"expected a list of [row, col] pairs, got {value!r}")
    positions = []
    for item in value:
        if not isinstance(item, list) or len(item) != 2:
            raise TypeError(f"expected a [row, col] pair, got {item!r}")
        positions.append((_as_int(item[0]), _as_int(item[1])))
    return tuple(positions)


def _as_roles(value: Any) -> Dict[str, str]:
    if not isinstance(value, dict):
        raise TypeError(f"expected a label -> role mapping, got {value!r}")
    return {_as_str(label): Role(_as_str(role)).value for label, role in value.items()}


def _as_scaling(value: Any) -> Dict[int, float]:
    if not isinstance(value, dict):
        raise TypeError(f"expected an N_NP -> factor mapping, got {value!r}")
    # JSON transports carry the integer keys as strings.
    return {
        _as_int(int(n_np) if isinstance(n_np, str) and n_np.isdigit() else n_np): _as_float(factor)
        for n_np, factor in value.items()
    }


COERCERS: Dict[str, Callable[[Any], Any]] = {
    "int": _as_int,
    "float": _as_float,
    "bool": _as_bool,
    "str": _as_str,
    "Tuple[float, ...]": _as_float_tuple,
    "Tuple[Tuple[int, int], ...]": _as_positions,
    "Dict[str, str]": _as_roles,
    "Dict[int, float]": _as_scaling,
}


def _parse_section(name: str, cls, raw: Any, violations: List[str]):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        violations.append(f"{name}: expected a mapping")
        return None
    known = {f.name: f for f in fields(cls)}
    for key in raw:
        if key not in known:
            violations.append(f"{name}.{key}: unknown key")
    values = {}
    for key, spec in known.items():
        if key not in raw:
            if spec.metadata.get("required"):
                violations.append(f"{name}.{key}: required")
            continue
        try:
            values[key] = COERCERS[spec.type](raw[key])
        except (TypeError, ValueError) as exc:
            violations.append(f"{name}.{key}: {exc}")
    missing = [
        key
        for key, spec in known.items()
        if key not in values and spec.default is MISSING and spec.default_factory is MISSING
    ]
    if missing:
        return None
    return cls(**values)


def _physics_violations(config: RunConfig) -> List[str]:
    problems = []
    network = config.network
    if network.rows < 2 or network.cols < 2:
        problems.append(f"network: rows and cols must be >= 2, got {network.rows}x{network.cols}")
    if not network.radius_nm > 0 or not network.spacing_nm > 0:
        problems.append("network: radius_nm and spacing_nm must be > 0")
    for key in ("eps_m", "eps_sio2"):
        value = getattr(config.electrostatics, key)
        if not value >= 1:
            problems.append(f"electrostatics.{key}: relative permittivity must be >= 1, got {value}")
    if config.electrostatics.n_terms < MIN_SERIES_TERMS:
        problems.append(f"electrostatics.n_terms: must be >= {MIN_SERIES_TERMS}")
    try:
        PlacementKind(config.electrodes.policy)
    except ValueError:
        problems.append(f"electrodes.policy: unknown policy {config.electrodes.policy!r}")
    if not 1 <= config.electrodes.n_electrodes <= 8 and config.electrodes.policy != "explicit":
        problems.append("electrodes.n_electrodes: must lie in [1, 8]")
    try:
        config.simulation_params()
    except SimulationParamsError as exc:
        problems.extend(f"simulation: {item}" for item in str(exc).split("; "))
    voltages = config.voltages
    if not voltages.input_high_mv > 0 or not voltages.control_range_mv >= 0:
        problems.append("voltages: input_high_mv must be > 0 and control_range_mv >= 0")
    if not voltages.u_ref_mv > 0:
        problems.append("voltages.u_ref_mv: must be > 0")
    grid = voltages.iv_grid_mv
    if any(b <= a for a, b in zip(grid, grid[1:])):
        problems.append("voltages.iv_grid_mv: must be strictly increasing")
    for n_np, factor in voltages.scaling.items():
        if not factor > 0:
            problems.append(f"voltages.scaling[{n_np}]: factor must be > 0, got {factor}")
    if voltages.scaling.get(REFERENCE_N_NP, 1.0) != 1.0:
        problems.append(f"voltages.scaling[{REFERENCE_N_NP}]: reference factor must be 1")
    if config.sampling.n_samples < 1:
        problems.append("sampling.n_samples: must be >= 1")
    if config.sampling.master_seed < 0:
        problems.append("sampling.master_seed: must be >= 0")
    return problems


def validate_config(config: RunConfig) -> List[str]:
    """Return every violation of ``config``; builds the network when the scalars pass."""

    problems = _physics_violations(config)
    if problems:
        return problems
    try:
        topology = config.topology()
        electrodes = config.electrode_config(topology)
        model = assemble_capacitance_matrix(
            topology, electrodes, config.permittivities(), config.electrostatics.n_terms
        )
    except (TopologyError, ElectrodeConfigError, CapacitanceDomainError) as exc:
        return [f"electrodes: {exc}"]
    except SingularCapacitanceError as exc:
        return [f"electrostatics: {exc}"]
    ratio = model.min_charging_to_thermal_ratio(config.simulation.temperature_k)
    if ratio < WEAK_BLOCKADE_RATIO:
        LOGGER.warning(
            "Weak Coulomb blockade: min E_C / k_BT = %.1f < %.0f at T = %.3g K",
            ratio,
            WEAK_BLOCKADE_RATIO,
            config.simulation.temperature_k,
        )
    return []


def config_from_dict(data: Any, validate: bool = True) -> RunConfig:
    """Build and validate a ``RunConfig`` from the parsed YAML structure.

    ``validate=False`` skips the physics checks and the network build; type and key
    checks always run.

    Raises:
        RunConfigError: Carrying every violation found.
    """

    if not isinstance(data, dict):
        raise RunConfigError(["top level: expected a mapping of sections"])
    violations: List[str] = []
    for key in data:
        if key not in SECTIONS:
            violations.append(f"{key}: unknown section")
    for key in REQUIRED_SECTIONS:
        if key not in data:
            violations.append(f"{key}: required section")
    sections = {
        name: _parse_section(name, cls, data.get(name), violations)
        for name, cls in SECTIONS.items()
    }
    if violations:
        raise RunConfigError(violations)
    config = RunConfig(**sections)
    violations = validate_config(config) if validate else []
    if violations:
        raise RunConfigError(violations)
    return config


def parse_config_text(text: str) -> RunConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise RunConfigError([f"yaml: {exc}"]) from exc
    return config_from_dict(data)


def parse_config(path: str | Path) -> RunConfig:
    """Read, parse and validate a YAML run config."""

    path = Path(path)
    if not path.is_file():
        raise RunConfigError([f"{path}: no such config file"])
    config = parse_config_text(path.read_text(encoding="utf-8"))
    LOGGER.info("Loaded run config %s (%dx%d)", path, config.network.rows, config.network.cols)
    return config


def _plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_plain(item) for item in value]
    if isinstance(value, Mapping):
        return {key: _plain(item) for key, item in value.items()}
    return value


def config_to_dict(config: RunConfig) -> Dict[str, Dict[str, Any]]:
    return {
        name: {f.name: _plain(getattr(getattr(config, name), f.name)) for f in fields(cls)}
        for name, cls in SECTIONS.items()
    }


def emit_config(config: RunConfig) -> str:
    """Render ``config`` as YAML; ``parse_config_text(emit_config(c)) == c``."""

    return yaml.safe_dump(config_to_dict(config), sort_keys=False, default_flow_style=None)


def config_hash(config: RunConfig) -> str:
    return hashlib.sha256(emit_config(config).encode("utf-8")).hexdigest()
