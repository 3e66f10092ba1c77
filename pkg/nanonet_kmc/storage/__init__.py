from nanonet_kmc.storage.records import (
    SCHEMA_VERSION,
    RunRecord,
    RunStoreError,
    currents_from_frame,
    gate_sample_columns,
    gate_samples_frame,
    read_gate_samples,
)

__all__ = [
    "SCHEMA_VERSION",
    "RunRecord",
    "RunStoreError",
    "currents_from_frame",
    "gate_sample_columns",
    "gate_samples_frame",
    "read_gate_samples",
]
