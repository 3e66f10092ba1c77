from .capacitance import (
    DEFAULT_N_TERMS,
    MIN_SERIES_TERMS,
    CapacitanceDomainError,
    CapacitanceModel,
    DiagonalContribution,
    Permittivities,
    SingularCapacitanceError,
    assemble_capacitance_matrix,
    dump_capacitance_csv,
    internal_energy,
    mutual_capacitance,
    potentials,
    self_capacitance,
)

__all__ = [
    "DEFAULT_N_TERMS",
    "MIN_SERIES_TERMS",
    "CapacitanceDomainError",
    "CapacitanceModel",
    "DiagonalContribution",
    "Permittivities",
    "SingularCapacitanceError",
    "assemble_capacitance_matrix",
    "dump_capacitance_csv",
    "internal_energy",
    "mutual_capacitance",
    "potentials",
    "self_capacitance",
]
