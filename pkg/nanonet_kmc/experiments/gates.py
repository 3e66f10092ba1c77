"""Random sampling of the Boolean-gate phase space."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np
import pandas as pd

from .. import tasks
from ..electrostatics import CapacitanceModel
from ..engine import CurrentEstimate
from ..runconfig import RunConfig
from ..topology import ElectrodeConfig
from .runner import (
    INPUT_COMBINATIONS,
    GateVoltages,
    Stream,
    build_setup,
    draw_controls,
    gate_job,
    gate_voltages_mv,
    replica_seed,
    replica_streams,
    simulate_point,
)
from .scaling import ScalingTable

LOGGER = logging.getLogger(__name__)

CONVERGED = "uncertainty_reached"


@dataclass(frozen=True)
class GateSample:
    """Four currents (A) ordered (0,0), (1,0), (0,1), (1,1) at one control vector (mV)."""

    sample_id: int
    seed: int
    controls_mv: Tuple[float, ...]
    currents: Tuple[float, float, float, float]
    uncertainties: Tuple[float, float, float, float]
    terminations: Tuple[str, str, str, str]
    errors: Tuple[str, ...] = ()

    @property
    def flags(self) -> str:
        """``ok``, or the non-converged terminations as ``bits:reason`` joined by ``|``."""

        flagged = [
            f"{a}{b}:{reason}"
            for (a, b), reason in zip(INPUT_COMBINATIONS, self.terminations)
            if reason != CONVERGED
        ]
        return "|".join(flagged) or "ok"

    @property
    def failed(self) -> bool:
        return any(reason == "failed" for reason in self.terminations)

    @classmethod
    def from_result(cls, result: Dict[str, Any]) -> "GateSample":
        runs = result["runs"]
        return cls(
            sample_id=int(result["sample_id"]),
            seed=int(result["seed"]),
            controls_mv=tuple(float(v) for v in result["controls_mv"]),
            currents=tuple(float(run["current"]) for run in runs),
            uncertainties=tuple(float(run["uncertainty"]) for run in runs),
            terminations=tuple(run["termination"] for run in runs),
            errors=tuple(run["error"] for run in runs if run.get("error")),
        )


@dataclass(frozen=True)
class GateSampleSet:
    """Samples of one electrode layout plus the metadata recorded next to them."""

    samples: Tuple[GateSample, ...]
    electrode_labels: Tuple[str, ...]
    control_labels: Tuple[str, ...]
    n_np: int
    scale: float
    input_high_mv: float
    control_range_mv: float
    master_seed: int
    key: Tuple[int, ...] = field(default_factory=tuple)

    def currents(self) -> np.ndarray:
        return np.array([sample.currents for sample in self.samples], dtype=float).reshape(-1, 4)

    def controls(self) -> np.ndarray:
        return np.array(
            [sample.controls_mv for sample in self.samples], dtype=float
        ).reshape(len(self.samples), len(self.control_labels))

    @property
    def n_failed(self) -> int:
        return sum(1 for sample in self.samples if sample.failed)

    def termination_counts(self) -> Dict[str, int]:
        return dict(Counter(t for sample in self.samples for t in sample.terminations))

    def metadata(self) -> Dict[str, Any]:
        return {
            "n_samples": len(self.samples),
            "n_np": self.n_np,
            "scale": self.scale,
            "input_levels_mv": [0.0, self.input_high_mv * self.scale],
            "control_range_mv": [
                -self.control_range_mv * self.scale,
                self.control_range_mv * self.scale,
            ],
            "electrodes": list(self.electrode_labels),
            "controls": list(self.control_labels),
            "master_seed": self.master_seed,
            "stream_key": list(self.key),
            "terminations": self.termination_counts(),
            "failed_samples": self.n_failed,
        }


def sample_gate_phase_space(
    config: RunConfig,
    n_samples: int | None = None,
    master_seed: int | None = None,
    electrodes: ElectrodeConfig | None = None,
    scale: float | None = None,
    input_high_mv: float | None = None,
    key: Sequence[int] = (Stream.GATES,),
) -> GateSampleSet:
    """Draw control vectors and measure the four input combinations for each.

    Args:
        config: Network, simulation and voltage settings.
        n_samples: Overrides ``config.sampling.n_samples``.
        master_seed: Overrides ``config.sampling.master_seed``.
        electrodes: Layout to sample; defaults to the configured placement.
        scale: Voltage multiplier; defaults to the configured factor for this size.
        input_high_mv: Logic-high input level before scaling.
        key: Spawn-key prefix separating this sample set from others drawn from the
            same master seed.

    Each sample is one replica job with its own seed, so results do not depend on how
    the jobs are scheduled.
    """

    config = config.with_overrides(seed=master_seed, samples=n_samples)
    n_samples = config.sampling.n_samples
    if electrodes is None:
        electrodes = config.electrode_config()
    if scale is None:
        scale = ScalingTable.from_config(config).factor(config.n_np)
    levels = GateVoltages(
        input_high_mv=config.voltages.input_high_mv if input_high_mv is None else input_high_mv,
        control_range_mv=config.voltages.control_range_mv,
        scale=scale,
    )
    jobs = [
        gate_job(config, electrodes, sample_id, (*key, sample_id), levels)
        for sample_id in range(n_samples)
    ]
    samples = tuple(GateSample.from_result(result) for result in tasks.dispatch_replicas(jobs))
    sample_set = GateSampleSet(
        samples=samples,
        electrode_labels=electrodes.labels,
        control_labels=tuple(e.label for e in electrodes.controls),
        n_np=config.n_np,
        scale=scale,
        input_high_mv=levels.input_high_mv,
        control_range_mv=levels.control_range_mv,
        master_seed=config.sampling.master_seed,
        key=tuple(int(k) for k in key),
    )
    LOGGER.info(
        "Sampled %d gate configurations on %d NPs (%d controls, s = %.3f, %d failed)",
        n_samples,
        config.n_np,
        electrodes.n_controls,
        scale,
        sample_set.n_failed,
    )
    return sample_set


@dataclass(frozen=True, eq=False)
class SingleRun:
    estimate: CurrentEstimate
    electrode_labels: Tuple[str, ...]
    voltages_mv: Tuple[float, ...]
    seed: int
    model: CapacitanceModel
    trace: pd.DataFrame | None = None


def simulate_configuration(
    config: RunConfig, bits: Tuple[int, int] = (1, 1), trace: bool = False
) -> SingleRun:
    """One inline run of the configured layout at input ``bits`` and random controls."""

    setup = build_setup(config)
    scale = ScalingTable.from_config(config).factor(config.n_np)
    seed = replica_seed(config.sampling.master_seed, (Stream.SIMULATE,))
    control_rng, run_rng = replica_streams(seed, 2)
    controls = draw_controls(
        control_rng, setup.electrodes.n_controls, config.voltages.control_range_mv, scale
    )
    voltages = gate_voltages_mv(
        setup.electrodes, controls, bits, config.voltages.input_high_mv, scale
    )
    estimate, simulator = simulate_point(
        setup, config.simulation_params(), voltages, run_rng, trace=trace
    )
    return SingleRun(
        estimate=estimate,
        electrode_labels=setup.electrodes.labels,
        voltages_mv=tuple(float(v) for v in voltages),
        seed=seed,
        model=setup.model,
        trace=simulator.trace_frame() if trace else None,
    )
