"""Replica jobs: the unit of work shipped to workers and their inline execution.

A job is a plain JSON-serialisable payload so it can travel through any Celery
serializer. Workers rebuild the network from the payload and keep the assembled
capacitance model in a per-process cache.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..constants import MILLIVOLT
from ..electrostatics import CapacitanceModel, assemble_capacitance_matrix
from ..engine import (
    CurrentEstimate,
    EventDomainError,
    KineticMonteCarlo,
    SimulationParams,
)
from ..runconfig import RunConfig, config_from_dict, config_to_dict
from ..topology import Electrode, ElectrodeConfig, NetworkTopology, Role

LOGGER = logging.getLogger(__name__)

INPUT_COMBINATIONS: Tuple[Tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (1, 1))


class Stream(IntEnum):
    """First spawn-key entry; keeps the random streams of different experiments apart."""

    GATES = 0
    IV = 1
    SCALING = 2
    POSITION_SCAN = 3
    CORRELATION_MAP = 4
    CONTROL_SERIES = 5
    SIZE_SERIES = 6
    SIMULATE = 7


class JobKind:
    GATE = "gate"
    POINT = "point"


def replica_seed(master_seed: int, key: Sequence[int]) -> int:
    """Derive the 32-bit seed of one replica from the master seed and its spawn key."""

    sequence = np.random.SeedSequence(master_seed, spawn_key=tuple(int(k) for k in key))
    return int(sequence.generate_state(1)[0])


def replica_streams(seed: int, n_streams: int) -> List[np.random.Generator]:
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(n_streams)]


@dataclass(frozen=True, eq=False)
class NetworkSetup:
    topology: NetworkTopology
    electrodes: ElectrodeConfig
    model: CapacitanceModel


def build_setup(config: RunConfig, electrodes: ElectrodeConfig | None = None) -> NetworkSetup:
    topology = config.topology()
    if electrodes is None:
        electrodes = config.electrode_config(topology)
    else:
        electrodes.validate_against(topology)
    model = assemble_capacitance_matrix(
        topology, electrodes, config.permittivities(), config.electrostatics.n_terms
    )
    return NetworkSetup(topology=topology, electrodes=electrodes, model=model)


def electrodes_to_payload(electrodes: ElectrodeConfig) -> List[List[Any]]:
    return [[e.label, e.attached_np, e.role.value] for e in electrodes.electrodes]


def electrodes_from_payload(items: Sequence[Sequence[Any]]) -> ElectrodeConfig:
    return ElectrodeConfig(
        electrodes=tuple(
            Electrode(label=str(label), attached_np=int(index), role=Role(role))
            for label, index, role in items
        )
    )


@lru_cache(maxsize=16)
def _cached_setup(config_json: str, electrodes_json: str) -> Tuple[RunConfig, NetworkSetup]:
    # Payloads come from validated configs.
    config = config_from_dict(json.loads(config_json), validate=False)
    electrodes = electrodes_from_payload(json.loads(electrodes_json))
    return config, build_setup(config, electrodes)


def setup_from_payload(payload: Dict[str, Any]) -> Tuple[RunConfig, NetworkSetup]:
    return _cached_setup(
        json.dumps(payload["config"], sort_keys=True), json.dumps(payload["electrodes"])
    )


@dataclass(frozen=True)
class GateVoltages:
    """Voltage levels of a gate job in mV, before scaling by ``scale``."""

    input_high_mv: float
    control_range_mv: float
    scale: float = 1.0


def draw_controls(
    rng: np.random.Generator, n_controls: int, control_range_mv: float, scale: float
) -> np.ndarray:
    """Uniform control voltages in ``[-range * scale, +range * scale]`` mV."""

    bound = control_range_mv * scale
    return rng.uniform(-bound, bound, size=n_controls)


def gate_voltages_mv(
    electrodes: ElectrodeConfig,
    controls_mv: Sequence[float],
    bits: Tuple[int, int],
    input_high_mv: float,
    scale: float,
) -> np.ndarray:
    """Electrode voltages (mV) in electrode order; the output stays grounded."""

    voltages = np.zeros(len(electrodes))
    first, second = electrodes.input_indices
    voltages[first] = bits[0] * input_high_mv * scale
    voltages[second] = bits[1] * input_high_mv * scale
    voltages[list(electrodes.control_indices)] = np.asarray(controls_mv, dtype=float)
    voltages[electrodes.output_index] = 0.0
    return voltages


def simulate_point(
    setup: NetworkSetup,
    params: SimulationParams,
    voltages_mv: Sequence[float],
    rng: np.random.Generator,
    trace: bool = False,
) -> Tuple[CurrentEstimate, KineticMonteCarlo]:
    """One equilibrate + measure run at fixed electrode voltages given in mV."""

    simulator = KineticMonteCarlo(
        setup.topology,
        setup.electrodes,
        setup.model,
        params,
        np.asarray(voltages_mv, dtype=float) * MILLIVOLT,
        rng,
        trace=trace,
    )
    if simulator.equilibrate():
        LOGGER.warning("State froze during equilibration; recording zero current")
    return simulator.measure_current(), simulator


def _failed(exc: Exception) -> Dict[str, Any]:
    LOGGER.error("Replica run failed: %s", exc)
    return {
        "current": float("nan"),
        "uncertainty": float("nan"),
        "termination": "failed",
        "events": 0,
        "error": f"{type(exc).__name__}: {exc}",
    }


def _estimate_payload(estimate: CurrentEstimate) -> Dict[str, Any]:
    return {
        "current": estimate.current,
        "uncertainty": estimate.uncertainty,
        "termination": estimate.termination.value,
        "events": estimate.events,
        "error": "",
    }


def _run_guarded(setup, params, voltages_mv, rng) -> Dict[str, Any]:
    try:
        estimate, _ = simulate_point(setup, params, voltages_mv, rng)
    except (ArithmeticError, EventDomainError, RuntimeError) as exc:
        return _failed(exc)
    return _estimate_payload(estimate)


def _run_gate_job(payload: Dict[str, Any]) -> Dict[str, Any]:
    config, setup = setup_from_payload(payload)
    params = config.simulation_params(payload.get("temperature"))
    seed = replica_seed(payload["master_seed"], payload["key"])
    control_rng, *run_rngs = replica_streams(seed, 1 + len(INPUT_COMBINATIONS))
    levels = payload["voltages"]
    controls = draw_controls(
        control_rng, setup.electrodes.n_controls, levels["control_range_mv"], levels["scale"]
    )
    runs = []
    for bits, rng in zip(INPUT_COMBINATIONS, run_rngs):
        voltages = gate_voltages_mv(
            setup.electrodes, controls, bits, levels["input_high_mv"], levels["scale"]
        )
        runs.append(_run_guarded(setup, params, voltages, rng))
    return {
        "sample_id": payload["sample_id"],
        "seed": seed,
        "controls_mv": controls.tolist(),
        "runs": runs,
    }


def _run_point_job(payload: Dict[str, Any]) -> Dict[str, Any]:
    config, setup = setup_from_payload(payload)
    params = config.simulation_params(payload.get("temperature"))
    seed = replica_seed(payload["master_seed"], payload["key"])
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    voltages = payload.get("voltages_mv")
    if voltages is None:
        bound = payload["random_range_mv"]
        voltages = rng.uniform(-bound, bound, size=len(setup.electrodes))
        voltages[setup.electrodes.output_index] = 0.0
    voltages = np.asarray(voltages, dtype=float)
    result = _run_guarded(setup, params, voltages, rng)
    result.update(sample_id=payload["sample_id"], seed=seed, voltages_mv=voltages.tolist())
    return result


_HANDLERS = {JobKind.GATE: _run_gate_job, JobKind.POINT: _run_point_job}


def execute_job(payload: Dict[str, Any]) -> Dict[str, Any]:
    """Run one replica job synchronously and return its JSON-serialisable result."""

    try:
        handler = _HANDLERS[payload["kind"]]
    except KeyError as exc:
        raise EventDomainError(f"unknown job kind {payload.get('kind')!r}") from exc
    return handler(payload)


def gate_job(
    config: RunConfig,
    electrodes: ElectrodeConfig,
    sample_id: int,
    key: Sequence[int],
    voltages: GateVoltages,
    temperature: float | None = None,
) -> Dict[str, Any]:
    return {
        "kind": JobKind.GATE,
        "config": config_to_dict(config),
        "electrodes": electrodes_to_payload(electrodes),
        "sample_id": sample_id,
        "master_seed": config.sampling.master_seed,
        "key": [int(k) for k in key],
        "temperature": temperature,
        "voltages": {
            "input_high_mv": voltages.input_high_mv,
            "control_range_mv": voltages.control_range_mv,
            "scale": voltages.scale,
        },
    }


def point_job(
    config: RunConfig,
    electrodes: ElectrodeConfig,
    sample_id: int,
    key: Sequence[int],
    voltages_mv: Sequence[float] | None = None,
    random_range_mv: float | None = None,
    temperature: float | None = None,
) -> Dict[str, Any]:
    """Single run at ``voltages_mv``, or at voltages drawn uniformly in ``±random_range_mv``."""

    if (voltages_mv is None) == (random_range_mv is None):
        raise EventDomainError("give exactly one of voltages_mv and random_range_mv")
    return {
        "kind": JobKind.POINT,
        "config": config_to_dict(config),
        "electrodes": electrodes_to_payload(electrodes),
        "sample_id": sample_id,
        "master_seed": config.sampling.master_seed,
        "key": [int(k) for k in key],
        "temperature": temperature,
        "voltages_mv": None if voltages_mv is None else [float(v) for v in voltages_mv],
        "random_range_mv": random_range_mv,
    }

