from .bench import BENCH_COLUMNS, BenchResult, bench, log_log_slope
from .gates import GateSample, GateSampleSet, SingleRun, sample_gate_phase_space, simulate_configuration
from .iv import IV_COLUMNS, IVCurve, iv_temperature_series, run_iv_sweep, sweep_electrodes
from .runner import INPUT_COMBINATIONS, NetworkSetup, Stream, build_setup, execute_job, replica_seed
from .scaling import (
    ScalingExtrapolationError,
    ScalingTable,
    ScalingTableError,
    derive_voltage_scaling,
    resolve_scaling,
    scale_from_curves,
)
from .series import (
    DEFAULT_CONTROL_COUNTS,
    DEFAULT_SIDES,
    PositionScan,
    control_count_series,
    input_position_scan,
    prediction_tracking,
    series_frame,
    size_series,
    summarize_series,
    voltage_correlation_map,
)

__all__ = [
    "BENCH_COLUMNS",
    "DEFAULT_CONTROL_COUNTS",
    "DEFAULT_SIDES",
    "INPUT_COMBINATIONS",
    "IV_COLUMNS",
    "BenchResult",
    "GateSample",
    "GateSampleSet",
    "IVCurve",
    "NetworkSetup",
    "PositionScan",
    "ScalingExtrapolationError",
    "ScalingTable",
    "ScalingTableError",
    "SingleRun",
    "Stream",
    "bench",
    "build_setup",
    "control_count_series",
    "derive_voltage_scaling",
    "execute_job",
    "input_position_scan",
    "iv_temperature_series",
    "log_log_slope",
    "prediction_tracking",
    "replica_seed",
    "resolve_scaling",
    "run_iv_sweep",
    "sample_gate_phase_space",
    "scale_from_curves",
    "series_frame",
    "simulate_configuration",
    "size_series",
    "summarize_series",
    "sweep_electrodes",
    "voltage_correlation_map",
]
