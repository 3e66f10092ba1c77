"""Experiment series built on gate sampling: control count, input position and size."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
import pandas as pd

from .. import tasks
from ..analysis import (
    MetricsSummary,
    prediction_rank_correlation,
    summarize,
    voltage_current_correlations,
)
from ..runconfig import RunConfig
from ..topology import (
    ControlSeries,
    PlacementKind,
    Role,
    control_series_configs,
    control_series_layout,
)
from .gates import GateSampleSet, sample_gate_phase_space
from .runner import Stream, point_job
from .scaling import ScalingTable, resolve_scaling

LOGGER = logging.getLogger(__name__)

DEFAULT_CONTROL_COUNTS = tuple(range(10))
DEFAULT_SIDES = tuple(range(3, 17))
SERIES_COLUMNS = (
    "key",
    "n_samples",
    "q_ndr",
    "q_ndr_simplified",
    "q_nls",
    "corr_lr",
    "corr_lx",
    "corr_rx",
    "x_mean_over_std",
    "ks_pvalue",
    "F_AND_mean",
    "F_AND_var",
    "F_OR_mean",
    "F_XOR_mean",
    "F_XOR_second",
)


def control_count_series(
    config: RunConfig,
    series: ControlSeries | str,
    control_counts: Sequence[int] = DEFAULT_CONTROL_COUNTS,
    n_samples: int | None = None,
) -> Dict[int, GateSampleSet]:
    """Gate sampling on the control-series layout with ``N_C`` controls kept per entry."""

    series = ControlSeries(series)
    base = control_series_layout(config.topology())
    scale = ScalingTable.from_config(config).factor(config.n_np)
    results = {}
    for n_controls in control_counts:
        LOGGER.info("Control series %s: N_C = %d", series.value, n_controls)
        electrodes = control_series_configs(base, series, n_controls)
        results[n_controls] = sample_gate_phase_space(
            config,
            n_samples=n_samples,
            electrodes=electrodes,
            scale=scale,
            key=(Stream.CONTROL_SERIES, n_controls),
        )
    return results


@dataclass(frozen=True)
class PositionScan:
    """Per-pair gate statistics and the single-electrode correlation map.

    ``pairs`` lists unordered input pairs ``(E_i, E_j)``; the matrices are indexed by
    the position of the labels in ``labels`` and are NaN on the diagonal.
    """

    labels: Tuple[str, ...]
    pairs: Tuple[Tuple[str, str], ...]
    sample_sets: Dict[Tuple[str, str], GateSampleSet]
    summaries: Dict[Tuple[str, str], MetricsSummary]
    correlation_map: Dict[str, float]
    delta_mv: float

    def heatmap(self, metric: str) -> np.ndarray:
        index = {label: k for k, label in enumerate(self.labels)}
        grid = np.full((len(self.labels), len(self.labels)), np.nan)
        for (first, second), summary in self.summaries.items():
            value = _metric(summary, metric)
            grid[index[first], index[second]] = value
            grid[index[second], index[first]] = value
        return grid

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for pair in self.pairs:
            summary = self.summaries[pair]
            rows.append(
                {
                    "E_i": pair[0],
                    "E_j": pair[1],
                    "n_samples": summary.n_samples,
                    "corr": summary.sample.corr_lr,
                    "q_ndr": summary.q_ndr,
                    "q_nls": summary.q_nls,
                }
            )
        return pd.DataFrame(rows, columns=["E_i", "E_j", "n_samples", "corr", "q_ndr", "q_nls"])

    def correlation_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"electrode": list(self.correlation_map), "corr": list(self.correlation_map.values())}
        )


def _metric(summary: MetricsSummary, metric: str) -> float:
    if metric == "corr":
        return summary.sample.corr_lr
    if metric in ("q_ndr", "q_nls"):
        return getattr(summary, metric)
    raise KeyError(f"unknown heatmap metric {metric!r}")


def voltage_correlation_map(
    config: RunConfig, n_samples: int | None = None, scale: float | None = None
) -> Dict[str, float]:
    """Pearson correlation of each non-output electrode voltage with the output current.

    Every non-output electrode is drawn uniformly in the control range for each sample.
    """

    n_samples = config.sampling.n_samples if n_samples is None else n_samples
    electrodes = config.electrode_config()
    if scale is None:
        scale = ScalingTable.from_config(config).factor(config.n_np)
    bound = config.voltages.control_range_mv * scale
    jobs = [
        point_job(
            config,
            electrodes,
            sample_id=k,
            key=(Stream.CORRELATION_MAP, k),
            random_range_mv=bound,
        )
        for k in range(n_samples)
    ]
    results = tasks.dispatch_replicas(jobs)
    voltages = np.array([r["voltages_mv"] for r in results], dtype=float)
    currents = np.array([r["current"] for r in results], dtype=float)
    valid = np.isfinite(currents)
    inputs = [k for k in range(len(electrodes)) if k != electrodes.output_index]
    coefficients = voltage_current_correlations(voltages[valid][:, inputs], currents[valid])
    return {electrodes.labels[k]: float(c) for k, c in zip(inputs, coefficients)}


def input_position_scan(
    config: RunConfig,
    delta_mv: float = 10.0,
    n_samples: int | None = None,
) -> PositionScan:
    """Gate statistics for every unordered pair of input positions.

    The output keeps its configured electrode; the electrodes not used as inputs act as
    controls and are resampled independently for each pair.
    """

    if not delta_mv > 0:
        raise ValueError(f"delta must be > 0 mV, got {delta_mv}")
    base = config.electrode_config()
    labels = tuple(
        label for k, label in enumerate(base.labels) if k != base.output_index
    )
    scale = ScalingTable.from_config(config).factor(config.n_np)
    pairs = tuple(itertools.combinations(labels, 2))
    sample_sets = {}
    summaries = {}
    for index, (first, second) in enumerate(pairs):
        roles = {label: Role.CONTROL for label in labels}
        roles[first], roles[second] = Role.INPUT1, Role.INPUT2
        electrodes = base.with_roles(roles)
        sample_set = sample_gate_phase_space(
            config,
            n_samples=n_samples,
            electrodes=electrodes,
            scale=scale,
            input_high_mv=delta_mv,
            key=(Stream.POSITION_SCAN, index),
        )
        sample_sets[(first, second)] = sample_set
        summaries[(first, second)] = summarize(sample_set.currents())
        LOGGER.info(
            "Input pair (%s, %s): Q_NDR = %.3f, Q_NLS = %.3f",
            first,
            second,
            summaries[(first, second)].q_ndr,
            summaries[(first, second)].q_nls,
        )
    correlation_map = voltage_correlation_map(config, n_samples=n_samples, scale=scale)
    return PositionScan(
        labels=labels,
        pairs=pairs,
        sample_sets=sample_sets,
        summaries=summaries,
        correlation_map=correlation_map,
        delta_mv=delta_mv,
    )


def size_series(
    config: RunConfig,
    setup: PlacementKind | str,
    sides: Sequence[int] = DEFAULT_SIDES,
    n_samples: int | None = None,
    scaling: ScalingTable | None = None,
) -> Tuple[Dict[int, GateSampleSet], ScalingTable]:
    """Gate sampling on ``side x side`` grids under Setup A or Setup B.

    Sizes without a configured scale factor are derived first. The random stream of
    each size depends on the side length only, so Setup A and Setup B share samples
    wherever their layouts coincide.
    """

    setup = PlacementKind(setup)
    if setup is PlacementKind.EXPLICIT:
        raise ValueError("the size series runs Setup A or Setup B")
    if scaling is None:
        scaling = resolve_scaling(config, sides)
    results = {}
    for side in sides:
        sized = config.with_grid(side, side).with_policy(setup)
        LOGGER.info("Size series %s: %dx%d", setup.value, side, side)
        results[side] = sample_gate_phase_space(
            sized,
            n_samples=n_samples,
            scale=scaling.factor(side * side),
            key=(Stream.SIZE_SERIES, side),
        )
    return results, scaling


def _xor_second_moment(summary: MetricsSummary) -> float:
    gate = summary.gates["XOR"]
    return gate.variance + gate.mean**2


def series_frame(summaries: Mapping[object, MetricsSummary]) -> pd.DataFrame:
    """One row of headline metrics per series entry, in key order."""

    rows: List[dict] = []
    for key, summary in summaries.items():
        rows.append(
            {
                "key": key,
                "n_samples": summary.n_samples,
                "q_ndr": summary.q_ndr,
                "q_ndr_simplified": summary.q_ndr_simplified,
                "q_nls": summary.q_nls,
                "corr_lr": summary.sample.corr_lr,
                "corr_lx": summary.sample.corr_lx,
                "corr_rx": summary.sample.corr_rx,
                "x_mean_over_std": summary.symmetry.x_mean_over_std,
                "ks_pvalue": summary.symmetry.ks_pvalue,
                "F_AND_mean": summary.gates["AND"].mean,
                "F_AND_var": summary.gates["AND"].variance,
                "F_OR_mean": summary.gates["OR"].mean,
                "F_XOR_mean": summary.gates["XOR"].mean,
                "F_XOR_second": _xor_second_moment(summary),
            }
        )
    return pd.DataFrame(rows, columns=list(SERIES_COLUMNS))


def prediction_tracking(summaries: Mapping[object, MetricsSummary]) -> Dict[str, float]:
    """Spearman correlation between predicted and measured fitness moments along a series."""

    values = list(summaries.values())
    return {
        "AND_mean": prediction_rank_correlation(
            [s.predictions["AND/OR"].mean for s in values], [s.gates["AND"].mean for s in values]
        ),
        "AND_variance": prediction_rank_correlation(
            [s.predictions["AND/OR"].variance for s in values],
            [s.gates["AND"].variance for s in values],
        ),
        "XOR_second": prediction_rank_correlation(
            [s.predictions["XOR/XNOR"].second for s in values],
            [_xor_second_moment(s) for s in values],
        ),
    }


def summarize_series(sample_sets: Mapping[object, GateSampleSet]) -> Dict[object, MetricsSummary]:
    return {key: summarize(sample_set.currents()) for key, sample_set in sample_sets.items()}

