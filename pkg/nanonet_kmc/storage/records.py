"""Run records and the CSV schemas of the experiment outputs.

Units on disk: voltages in mV, currents in A, times in s, energies in meV.
Floats are written in scientific notation with ten significant digits.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from nanonet_kmc.analysis import jsonable

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.9e"
CURRENT_COLUMNS = ("I00", "I10", "I01", "I11")
UNCERTAINTY_COLUMNS = ("u00", "u10", "u01", "u11")

UNITS = {
    "voltage": "mV",
    "current": "A",
    "time": "s",
    "energy": "meV",
}


class RunStoreError(RuntimeError):
    """Raised when a run record cannot be written or a record file is malformed."""


@dataclass
class RunRecord:
    """Everything written by one experiment invocation.

    ``files`` maps a table name to its path relative to ``directory``.
    """

    experiment: str
    config_hash: str
    version: str
    master_seed: int
    directory: str
    files: Dict[str, str] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    started: float = field(default_factory=time.monotonic)

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload.pop("started")
        payload["schema_version"] = SCHEMA_VERSION
        payload["units"] = dict(UNITS)
        return jsonable(payload)


def gate_sample_columns(n_controls: int) -> List[str]:
    columns = ["sample_id", "seed"]
    columns.extend(f"c_{k + 1}" for k in range(n_controls))
    for current, uncertainty in zip(CURRENT_COLUMNS, UNCERTAINTY_COLUMNS):
        columns.extend((current, uncertainty))
    columns.append("flags")
    return columns


def gate_samples_frame(sample_set) -> pd.DataFrame:
    """GateSample table: ``sample_id, seed, c_1..c_N, I00, u00, ..., I11, u11, flags``."""

    n_controls = len(sample_set.control_labels)
    rows = []
    for sample in sample_set.samples:
        row: List[Any] = [sample.sample_id, sample.seed, *sample.controls_mv]
        for current, uncertainty in zip(sample.currents, sample.uncertainties):
            row.extend((current, uncertainty))
        row.append(sample.flags)
        rows.append(row)
    return pd.DataFrame(rows, columns=gate_sample_columns(n_controls))


def read_gate_samples(path) -> pd.DataFrame:
    """Load a GateSample CSV and check its column layout."""

    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise RunStoreError(f"cannot read gate samples from {path}: {exc}") from exc
    n_controls = sum(1 for column in frame.columns if column.startswith("c_"))
    expected = gate_sample_columns(n_controls)
    if list(frame.columns) != expected:
        raise RunStoreError(
            f"{path}: unexpected columns {list(frame.columns)}, expected {expected}"
        )
    return frame


def currents_from_frame(frame: pd.DataFrame) -> np.ndarray:
    return frame.loc[:, list(CURRENT_COLUMNS)].to_numpy(dtype=float)

