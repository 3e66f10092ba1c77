from .decomposition import Decomposition, decompose, decompose_array
from .fitness import FitnessArrays, FitnessRecord, GateKind, closed_form_fitness, fitness, fitness_array
from .metrics import (
    DEFAULT_DELTAS,
    DEFAULT_THRESHOLD,
    FITNESS_COLUMNS,
    AnalysisInputError,
    ExceedanceCurve,
    GateStatistics,
    MetricsSummary,
    PredictedMoments,
    SampleStats,
    SymmetryStatistics,
    correlations,
    exceedance_probability,
    fitness_frame,
    jsonable,
    pearson,
    predicted_moments,
    prediction_rank_correlation,
    q_ndr,
    q_ndr_simplified,
    q_nls,
    summarize,
    symmetry_statistics,
    voltage_current_correlations,
)

__all__ = [
    "DEFAULT_DELTAS",
    "DEFAULT_THRESHOLD",
    "FITNESS_COLUMNS",
    "AnalysisInputError",
    "Decomposition",
    "ExceedanceCurve",
    "FitnessArrays",
    "FitnessRecord",
    "GateKind",
    "GateStatistics",
    "MetricsSummary",
    "PredictedMoments",
    "SampleStats",
    "SymmetryStatistics",
    "closed_form_fitness",
    "correlations",
    "decompose",
    "decompose_array",
    "exceedance_probability",
    "fitness",
    "fitness_array",
    "fitness_frame",
    "jsonable",
    "pearson",
    "predicted_moments",
    "prediction_rank_correlation",
    "q_ndr",
    "q_ndr_simplified",
    "q_nls",
    "summarize",
    "symmetry_statistics",
    "voltage_current_correlations",
]
