"""Local run store and the GateSample table layout."""

from __future__ import annotations

import json

import pandas as pd
import pytest

from nanonet_kmc.experiments import GateSample, GateSampleSet
from nanonet_kmc.storage import (
    SCHEMA_VERSION,
    RunStoreError,
    currents_from_frame,
    gate_sample_columns,
    gate_samples_frame,
    read_gate_samples,
)
from nanonet_kmc.storage.backends.base import get_run_store
from nanonet_kmc.storage.backends.local import LocalRunStore


@pytest.fixture
def store(tmp_path):
    return LocalRunStore(config={"root": str(tmp_path)})


@pytest.fixture
def sample_set():
    samples = (
        GateSample(
            sample_id=0,
            seed=11,
            controls_mv=(12.5, -3.0),
            currents=(1e-12, 2e-12, 3e-12, 4e-12),
            uncertainties=(0.04, 0.05, 0.03, 0.02),
            terminations=("uncertainty_reached",) * 4,
        ),
        GateSample(
            sample_id=1,
            seed=12,
            controls_mv=(-40.0, 7.25),
            currents=(0.0, 0.0, 1e-13, 0.0),
            uncertainties=(float("nan"), float("nan"), 0.3, float("nan")),
            terminations=("frozen_state", "frozen_state", "max_events", "frozen_state"),
        ),
    )
    return GateSampleSet(
        samples=samples,
        electrode_labels=("E1", "E2", "E3", "E4", "E7"),
        control_labels=("E3", "E4"),
        n_np=9,
        scale=1.0,
        input_high_mv=40.0,
        control_range_mv=50.0,
        master_seed=7,
    )


def _open(store, output="runs"):
    return store.open_run(
        experiment="gates", config_hash="ab" * 32, version="0.1.0", master_seed=7, output=output
    )


def test_open_run_directory_layout(store, tmp_path):
    record = _open(store)

    assert record.directory == str(tmp_path / "runs" / "gates" / f"{'ab' * 6}-seed7")


def test_absolute_output_ignores_root(store, tmp_path):
    record = _open(store, output=str(tmp_path / "elsewhere"))

    assert record.directory.startswith(str(tmp_path / "elsewhere"))


def test_tables_written_once(store, sample_set):
    record = _open(store)
    frame = gate_samples_frame(sample_set)

    store.write_table(record, "gate_samples", frame)

    assert record.files == {"gate_samples": "gate_samples.csv"}
    with pytest.raises(RunStoreError):
        store.write_table(record, "gate_samples", frame)


def test_finalize_writes_sidecar(store, sample_set):
    record = _open(store)
    record.metadata.update(sample_set.metadata())
    store.write_table(record, "gate_samples", gate_samples_frame(sample_set))

    path = store.finalize(record)

    payload = json.loads(open(path, encoding="utf-8").read())
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["units"]["current"] == "A"
    assert payload["files"] == {"gate_samples": "gate_samples.csv"}
    assert payload["metadata"]["terminations"]["frozen_state"] == 3
    assert payload["metadata"]["input_levels_mv"] == [0.0, 40.0]
    assert "started" not in payload


def test_gate_sample_frame_layout(sample_set):
    frame = gate_samples_frame(sample_set)

    assert list(frame.columns) == gate_sample_columns(2)
    assert gate_sample_columns(2) == [
        "sample_id", "seed", "c_1", "c_2",
        "I00", "u00", "I10", "u10", "I01", "u01", "I11", "u11", "flags",
    ]
    assert frame["flags"].tolist() == ["ok", "00:frozen_state|10:frozen_state|01:max_events|11:frozen_state"]


def test_written_samples_read_back(store, sample_set):
    record = _open(store)
    path = store.write_table(record, "gate_samples", gate_samples_frame(sample_set))

    frame = read_gate_samples(path)

    assert frame["sample_id"].tolist() == [0, 1]
    assert currents_from_frame(frame)[0].tolist() == pytest.approx([1e-12, 2e-12, 3e-12, 4e-12])
    assert "1.000000000e-12" in open(path, encoding="utf-8").read()


def test_read_rejects_foreign_tables(tmp_path):
    path = tmp_path / "other.csv"
    pd.DataFrame({"sample_id": [0], "I00": [1.0]}).to_csv(path, index=False)

    with pytest.raises(RunStoreError, match="unexpected columns"):
        read_gate_samples(path)
    with pytest.raises(RunStoreError):
        read_gate_samples(tmp_path / "missing.csv")


def test_get_run_store_uses_settings(settings, tmp_path):
    settings.NANONET_RUN_STORE = "nanonet_kmc.storage.backends.local.LocalRunStore"
    settings.NANONET_RUN_STORE_CONFIG = {}
    settings.NANONET_OUTPUT_DIR = tmp_path

    store = get_run_store()

    assert isinstance(store, LocalRunStore)
    assert store.config["root"] == str(tmp_path)
