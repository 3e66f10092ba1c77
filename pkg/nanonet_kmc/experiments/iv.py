"""Current-voltage sweeps with one driven input and every other electrode grounded."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from .. import tasks
from ..engine import EventDomainError
from ..runconfig import RunConfig
from ..topology import ElectrodeConfig
from .runner import Stream, point_job

LOGGER = logging.getLogger(__name__)

IV_COLUMNS = ("u_mv", "current", "uncertainty", "termination")


@dataclass(frozen=True)
class IVCurve:
    """``currents`` in A at ``voltages_mv``; ``terminations`` flags frozen or failed points."""

    label: str
    temperature: float
    voltages_mv: Tuple[float, ...]
    currents: Tuple[float, ...]
    uncertainties: Tuple[float, ...]
    terminations: Tuple[str, ...]

    def __post_init__(self) -> None:
        grid = np.asarray(self.voltages_mv, dtype=float)
        if np.any(np.diff(grid) <= 0):
            raise EventDomainError("I-V grid must be strictly increasing")

    def current_at(self, u_mv: float) -> float:
        return float(np.interp(u_mv, self.voltages_mv, self.currents))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "u_mv": self.voltages_mv,
                "current": self.currents,
                "uncertainty": self.uncertainties,
                "termination": self.terminations,
            },
            columns=list(IV_COLUMNS),
        )


def _sweep_jobs(
    config: RunConfig,
    electrodes: ElectrodeConfig,
    driven: Sequence[int],
    grid: Sequence[float],
    temperature: float,
    key: Sequence[int],
) -> List[dict]:
    jobs = []
    for point, u_mv in enumerate(grid):
        voltages = np.zeros(len(electrodes))
        voltages[list(driven)] = u_mv
        jobs.append(
            point_job(
                config,
                electrodes,
                sample_id=point,
                key=(*key, point),
                voltages_mv=voltages,
                temperature=temperature,
            )
        )
    return jobs


def _curve(label: str, temperature: float, grid: Sequence[float], results) -> IVCurve:
    return IVCurve(
        label=label,
        temperature=temperature,
        voltages_mv=tuple(float(u) for u in grid),
        currents=tuple(r["current"] for r in results),
        uncertainties=tuple(r["uncertainty"] for r in results),
        terminations=tuple(r["termination"] for r in results),
    )


def sweep_electrodes(
    config: RunConfig,
    electrodes: ElectrodeConfig,
    driven_labels: Sequence[str],
    grid_mv: Sequence[float],
    temperature: float | None = None,
    key: Sequence[int] = (Stream.IV,),
) -> IVCurve:
    """Drive ``driven_labels`` together at each grid voltage; one run per grid point."""

    if temperature is None:
        temperature = config.simulation.temperature_k
    driven = [electrodes.index_of(label) for label in driven_labels]
    if electrodes.output_index in driven:
        raise EventDomainError("the output electrode stays grounded")
    results = tasks.dispatch_replicas(
        _sweep_jobs(config, electrodes, driven, grid_mv, temperature, key)
    )
    curve = _curve("+".join(driven_labels), temperature, grid_mv, results)
    unconverged = sum(1 for t in curve.terminations if t != "uncertainty_reached")
    LOGGER.info(
        "I-V sweep %s at %.3g K: %d points, %d not converged",
        curve.label,
        temperature,
        len(grid_mv),
        unconverged,
    )
    return curve


def run_iv_sweep(
    config: RunConfig,
    input_electrode: str,
    grid_mv: Sequence[float] | None = None,
    temperature: float | None = None,
) -> IVCurve:
    """I-V curve of ``input_electrode`` on the configured layout, other electrodes grounded."""

    electrodes = config.electrode_config()
    grid = config.voltages.iv_grid_mv if grid_mv is None else tuple(grid_mv)
    position = electrodes.index_of(input_electrode)
    return sweep_electrodes(
        config, electrodes, [input_electrode], grid, temperature, key=(Stream.IV, position)
    )


def iv_temperature_series(
    config: RunConfig,
    input_electrode: str,
    temperatures: Sequence[float],
    grid_mv: Sequence[float] | None = None,
) -> List[IVCurve]:
    return [
        run_iv_sweep(config, input_electrode, grid_mv, temperature)
        for temperature in temperatures
    ]
