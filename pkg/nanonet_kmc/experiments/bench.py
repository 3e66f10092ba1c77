"""Per-event cost of rate recomputation and event selection across network sizes."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from ..constants import MILLIVOLT
from ..engine import (
    EventCatalog,
    SimulationState,
    advance_time,
    apply_event,
    build_event_table,
    select_event,
)
from ..runconfig import RunConfig
from .runner import Stream, build_setup, draw_controls, gate_voltages_mv, replica_seed

LOGGER = logging.getLogger(__name__)

DEFAULT_BENCH_SIDES = (3, 7, 10, 16)
BENCH_COLUMNS = ("n_np", "n_events", "rate_time_s", "select_time_s", "executed")


@dataclass(frozen=True)
class BenchResult:
    n_np: int
    n_events: int
    rate_time: float
    select_time: float
    executed: int


def _time_size(config: RunConfig, side: int, n_steps: int) -> BenchResult:
    sized = config.with_grid(side, side)
    setup = build_setup(sized)
    params = sized.simulation_params()
    rng = np.random.default_rng(replica_seed(config.sampling.master_seed, (Stream.SIMULATE, side)))
    controls = draw_controls(
        rng, setup.electrodes.n_controls, config.voltages.control_range_mv, 1.0
    )
    voltages = MILLIVOLT * gate_voltages_mv(
        setup.electrodes, controls, (1, 1), config.voltages.input_high_mv, 1.0
    )
    catalog = EventCatalog.build(setup.topology, setup.electrodes, setup.model)
    resistances = catalog.resistances(params)
    state = SimulationState.initial(setup.model, len(setup.electrodes), rng)
    rate_time = select_time = 0.0
    executed = 0
    for _ in range(n_steps):
        start = time.perf_counter()
        table = build_event_table(state, catalog, voltages, params, resistances)
        middle = time.perf_counter()
        if not table.k_tot > params.frozen_rate:
            break
        event = select_event(table, state.uniform(), params.frozen_rate)
        rate_time += middle - start
        select_time += time.perf_counter() - middle
        state.time = advance_time(state.time, table.k_tot, state.uniform())
        apply_event(state, setup.model, catalog, event)
        executed += 1
    if executed == 0:
        LOGGER.warning("Network %dx%d froze before the first timed event", side, side)
        return BenchResult(side * side, len(catalog), float("nan"), float("nan"), 0)
    return BenchResult(
        n_np=side * side,
        n_events=len(catalog),
        rate_time=rate_time / executed,
        select_time=select_time / executed,
        executed=executed,
    )


def log_log_slope(x: Sequence[float], y: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mask = np.isfinite(y) & (y > 0)
    if mask.sum() < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(x[mask]), np.log(y[mask]), 1)
    return float(slope)


def bench(
    config: RunConfig, sides: Sequence[int] = DEFAULT_BENCH_SIDES, n_steps: int = 2_000
) -> tuple[pd.DataFrame, Dict[str, float]]:
    """Time the two per-event costs on ``side x side`` grids.

    Returns:
        The per-size table and the log-log slopes of both costs against N_NP.
    """

    results: List[BenchResult] = []
    for side in sides:
        result = _time_size(config, side, n_steps)
        LOGGER.info(
            "Bench %dx%d: %d events, rates %.3g s, selection %.3g s per event",
            side,
            side,
            result.n_events,
            result.rate_time,
            result.select_time,
        )
        results.append(result)
    frame = pd.DataFrame(
        [(r.n_np, r.n_events, r.rate_time, r.select_time, r.executed) for r in results],
        columns=list(BENCH_COLUMNS),
    )
    slopes = {
        "rate_slope": log_log_slope(frame["n_np"], frame["rate_time_s"]),
        "select_slope": log_log_slope(frame["n_np"], frame["select_time_s"]),
    }
    return frame, slopes
