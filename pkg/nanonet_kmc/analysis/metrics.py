"""Sample statistics, nonlinearity measures and the per-gate summary of a sample set."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from .decomposition import decompose_array
from .fitness import GateKind, fitness_array

LOGGER = logging.getLogger(__name__)

DEFAULT_DELTAS = (0.0, 0.001, 0.005, 0.01, 0.05, 0.1)
DEFAULT_THRESHOLD = 4.0
EXCEEDANCE_GATES = (GateKind.AND, GateKind.NAND, GateKind.XOR)

FITNESS_COLUMNS = ("sample_id", "gate", "F", "m", "MSE", "c", "M_l", "M_r", "X")


class AnalysisInputError(ValueError):
    """Raised for malformed current arrays or analysis parameters."""


def pearson(a, b) -> float:
    """Sample Pearson coefficient; NaN with fewer than two points or zero variance."""

    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise AnalysisInputError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size < 2 or np.ptp(a) == 0 or np.ptp(b) == 0:
        return float("nan")
    return float(np.corrcoef(a, b)[0, 1])


@dataclass(frozen=True)
class SampleStats:
    """Moments of a sample set; ``M`` pools the ``M_l`` and ``M_r`` samples."""

    n: int
    mean_m: float
    mean_m2: float
    var_m: float
    mean_x: float
    mean_x2: float
    std_x: float
    corr_lr: float
    corr_lx: float
    corr_rx: float

    @classmethod
    def from_decompositions(cls, decompositions) -> "SampleStats":
        values = np.asarray(decompositions, dtype=float).reshape(-1, 3)
        m_l, m_r, x = values[:, 0], values[:, 1], values[:, 2]
        pooled = np.concatenate((m_l, m_r))
        if pooled.size == 0:
            nan = float("nan")
            return cls(0, nan, nan, nan, nan, nan, nan, nan, nan, nan)
        mean_m = float(pooled.mean())
        mean_m2 = float((pooled**2).mean())
        return cls(
            n=int(values.shape[0]),
            mean_m=mean_m,
            mean_m2=mean_m2,
            var_m=float(pooled.var()),
            mean_x=float(x.mean()),
            mean_x2=float((x**2).mean()),
            std_x=float(x.std()),
            corr_lr=pearson(m_l, m_r),
            corr_lx=pearson(m_l, x),
            corr_rx=pearson(m_r, x),
        )

    @classmethod
    def from_currents(cls, currents) -> "SampleStats":
        return cls.from_decompositions(decompose_array(currents))


def correlations(decompositions) -> Dict[str, float]:
    """Pearson coefficients between the decomposition components."""

    sample = SampleStats.from_decompositions(decompositions)
    return {"corr_lr": sample.corr_lr, "corr_lx": sample.corr_lx, "corr_rx": sample.corr_rx}


def voltage_current_correlations(voltages, currents) -> np.ndarray:
    """Pearson coefficient of every electrode voltage column with the output current."""

    voltages = np.asarray(voltages, dtype=float)
    currents = np.asarray(currents, dtype=float)
    if voltages.ndim != 2 or voltages.shape[0] != currents.shape[0]:
        raise AnalysisInputError(
            f"voltages {voltages.shape} do not match {currents.shape[0]} currents"
        )
    return np.array([pearson(voltages[:, k], currents) for k in range(voltages.shape[1])])


def _correlation_or_zero(value: float) -> float:
    return 0.0 if math.isnan(value) else value


@dataclass(frozen=True)
class PredictedMoments:
    """Moment predictions up to a common positive constant per gate family."""

    mean: float
    second: float
    variance: float
    undefined: bool = False


def predicted_moments(sample: SampleStats) -> Dict[str, PredictedMoments]:
    """Predictions for the AND/OR, NAND/NOR and XOR/XNOR families.

    An undefined ``corr_lr`` counts as zero.
    """

    rho = _correlation_or_zero(sample.corr_lr)
    denominator = sample.mean_x2 + sample.mean_m2 + sample.var_m * (1 - rho)
    nan = float("nan")
    if denominator > 0:
        mean = sample.mean_m / math.sqrt(denominator)
        second = (sample.mean_x2 + sample.mean_m2 + sample.var_m * (1 + rho)) / denominator
        variance = (sample.mean_x2 + sample.var_m * (2 + rho)) / denominator
        and_family = PredictedMoments(mean, second, variance)
        nand_family = PredictedMoments(-mean, second, variance)
    else:
        and_family = nand_family = PredictedMoments(nan, nan, nan, undefined=True)
    if sample.mean_m2 > 0:
        ratio = sample.mean_x2 / sample.mean_m2
        xor_family = PredictedMoments(0.0, ratio, ratio)
    else:
        xor_family = PredictedMoments(0.0, nan, nan, undefined=True)
    return {"AND/OR": and_family, "NAND/NOR": nand_family, "XOR/XNOR": xor_family}


def _tanh_measure(mean_m: float, scale: float) -> float:
    if scale > 0:
        return 0.5 * (1.0 - math.tanh(mean_m / scale))
    if mean_m > 0:
        return 0.0
    if mean_m < 0:
        return 1.0
    return 0.5


def q_ndr(sample: SampleStats) -> float:
    """Negative-differential-resistance measure in [0, 1]."""

    rho = _correlation_or_zero(sample.corr_lr)
    scale_sq = sample.mean_x2 / 2 + sample.var_m * (1 + rho / 2)
    return _tanh_measure(sample.mean_m, math.sqrt(max(scale_sq, 0.0)))


def q_ndr_simplified(sample: SampleStats) -> float:
    """``q_ndr`` with the cross term and ``corr_lr`` dropped."""

    return _tanh_measure(sample.mean_m, math.sqrt(max(sample.var_m, 0.0)))


def q_nls(sample: SampleStats) -> float:
    """Nonlinear-separability measure ``<X^2> / <M^2>``; NaN when ``<M^2> = 0``."""

    if not sample.mean_m2 > 0:
        return float("nan")
    return sample.mean_x2 / sample.mean_m2


@dataclass(frozen=True)
class ExceedanceCurve:
    gate: GateKind
    threshold: float
    deltas: Tuple[float, ...]
    probabilities: Tuple[float, ...]
    normalized: Tuple[float, ...]


def exceedance_probability(
    currents,
    gate: GateKind | str,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    threshold: float = DEFAULT_THRESHOLD,
) -> ExceedanceCurve:
    """Fraction of samples with ``F > threshold`` per ``delta``.

    ``normalized`` rescales the curve so its maximum is one. An empty sample set
    yields NaN probabilities.
    """

    if threshold <= 0:
        raise AnalysisInputError(f"threshold must be positive, got {threshold}")
    gate = GateKind(gate)
    currents = np.asarray(currents, dtype=float).reshape(-1, 4)
    if currents.shape[0] == 0:
        probabilities = np.full(len(deltas), np.nan)
    else:
        probabilities = np.array(
            [float((fitness_array(currents, gate, d).values > threshold).mean()) for d in deltas]
        )
    peak = np.nanmax(probabilities) if np.any(np.isfinite(probabilities)) else np.nan
    if peak > 0:
        normalized = probabilities / peak
    else:
        normalized = np.where(np.isfinite(probabilities), 0.0, np.nan)
    return ExceedanceCurve(
        gate=gate,
        threshold=threshold,
        deltas=tuple(float(d) for d in deltas),
        probabilities=tuple(float(p) for p in probabilities),
        normalized=tuple(float(p) for p in normalized),
    )


@dataclass(frozen=True)
class GateStatistics:
    """Box-plot statistics over the finite fitness values of one gate."""

    gate: GateKind
    n: int
    n_infinite: int
    mean: float
    variance: float
    std: float
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float

    @classmethod
    def from_values(cls, gate: GateKind, values, infinite) -> "GateStatistics":
        values = np.asarray(values, dtype=float)
        infinite = np.asarray(infinite, dtype=bool)
        finite = values[~infinite]
        if finite.size == 0:
            nan = float("nan")
            return cls(gate, 0, int(infinite.sum()), nan, nan, nan, nan, nan, nan, nan, nan)
        q1, median, q3 = np.percentile(finite, [25, 50, 75])
        return cls(
            gate=gate,
            n=int(finite.size),
            n_infinite=int(infinite.sum()),
            mean=float(finite.mean()),
            variance=float(finite.var()),
            std=float(finite.std()),
            minimum=float(finite.min()),
            q1=float(q1),
            median=float(median),
            q3=float(q3),
            maximum=float(finite.max()),
        )


@dataclass(frozen=True)
class SymmetryStatistics:
    x_mean_over_std: float
    ks_statistic: float
    ks_pvalue: float
    corr_lr: float
    corr_lx: float
    corr_rx: float


def symmetry_statistics(decompositions) -> SymmetryStatistics:
    """Checks of the symmetric-layout assumptions: zero mean ``X`` and equal ``M_l``/``M_r``."""

    values = np.asarray(decompositions, dtype=float).reshape(-1, 3)
    sample = SampleStats.from_decompositions(values)
    if values.shape[0] >= 2:
        ks = stats.ks_2samp(values[:, 0], values[:, 1])
        ks_statistic, ks_pvalue = float(ks.statistic), float(ks.pvalue)
    else:
        ks_statistic = ks_pvalue = float("nan")
    ratio = sample.mean_x / sample.std_x if sample.std_x > 0 else float("nan")
    return SymmetryStatistics(
        x_mean_over_std=ratio,
        ks_statistic=ks_statistic,
        ks_pvalue=ks_pvalue,
        corr_lr=sample.corr_lr,
        corr_lx=sample.corr_lx,
        corr_rx=sample.corr_rx,
    )


def prediction_rank_correlation(predicted: Iterable[float], empirical: Iterable[float]) -> float:
    """Spearman rank correlation between predicted and measured moments across a series."""

    predicted = np.asarray(list(predicted), dtype=float)
    empirical = np.asarray(list(empirical), dtype=float)
    mask = np.isfinite(predicted) & np.isfinite(empirical)
    if mask.sum() < 3:
        return float("nan")
    result = stats.spearmanr(predicted[mask], empirical[mask])
    return float(result.statistic)


@dataclass(frozen=True)
class MetricsSummary:
    n_samples: int
    gates: Dict[str, GateStatistics]
    sample: SampleStats
    predictions: Dict[str, PredictedMoments]
    q_ndr: float
    q_ndr_simplified: float
    q_nls: float
    symmetry: SymmetryStatistics
    exceedance: Dict[str, ExceedanceCurve]
    undefined: Tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, object]:
        return jsonable(asdict(self))


def jsonable(value):
    """Plain JSON types with NaN and infinities mapped to ``None``."""

    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, np.generic):
        return jsonable(value.item())
    return value


def summarize(
    currents,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    threshold: float = DEFAULT_THRESHOLD,
) -> MetricsSummary:
    """Full analysis of an ``(n, 4)`` current array. Rows holding NaN are dropped."""

    currents = np.asarray(currents, dtype=float).reshape(-1, 4)
    valid = np.all(np.isfinite(currents), axis=1)
    if not valid.all():
        LOGGER.warning("Dropping %d samples with missing currents", int((~valid).sum()))
    currents = currents[valid]
    decompositions = decompose_array(currents)
    sample = SampleStats.from_decompositions(decompositions)
    gates = {}
    for gate in GateKind:
        result = fitness_array(currents, gate)
        gates[gate.value] = GateStatistics.from_values(gate, result.values, result.infinite)
    summary_q_nls = q_nls(sample)
    undefined = []
    if math.isnan(summary_q_nls):
        undefined.append("q_nls")
    if math.isnan(sample.corr_lr):
        undefined.append("corr_lr")
    predictions = predicted_moments(sample)
    undefined.extend(f"predicted:{name}" for name, p in predictions.items() if p.undefined)
    return MetricsSummary(
        n_samples=int(currents.shape[0]),
        gates=gates,
        sample=sample,
        predictions=predictions,
        q_ndr=q_ndr(sample),
        q_ndr_simplified=q_ndr_simplified(sample),
        q_nls=summary_q_nls,
        symmetry=symmetry_statistics(decompositions),
        exceedance={
            gate.value: exceedance_probability(currents, gate, deltas, threshold)
            for gate in EXCEEDANCE_GATES
        },
        undefined=tuple(undefined),
    )


def fitness_frame(sample_ids: Sequence[int], currents, delta: float = 0.0) -> pd.DataFrame:
    """Per-sample, per-gate fitness table in ``FITNESS_COLUMNS`` order."""

    currents = np.asarray(currents, dtype=float).reshape(-1, 4)
    decompositions = decompose_array(currents)
    frames = []
    for gate in GateKind:
        result = fitness_array(currents, gate, delta)
        frames.append(
            pd.DataFrame(
                {
                    "sample_id": list(sample_ids),
                    "gate": gate.value,
                    "F": result.values,
                    "m": result.m,
                    "MSE": result.mse,
                    "c": result.c,
                    "M_l": decompositions[:, 0],
                    "M_r": decompositions[:, 1],
                    "X": decompositions[:, 2],
                }
            )
        )
    if not frames:
        return pd.DataFrame(columns=list(FITNESS_COLUMNS))
    return pd.concat(frames, ignore_index=True)[list(FITNESS_COLUMNS)]

