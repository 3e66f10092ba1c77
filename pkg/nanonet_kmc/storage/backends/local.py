"""Filesystem run store writing CSV tables next to a JSON sidecar."""

from __future__ import annotations

import json
import logging
import time
from pathlib import Path

import pandas as pd

from nanonet_kmc.storage.backends.base import BaseRunStore
from nanonet_kmc.storage.records import FLOAT_FORMAT, RunRecord, RunStoreError

LOGGER = logging.getLogger(__name__)

SIDECAR_NAME = "record.json"


class LocalRunStore(BaseRunStore):
    """Store runs under ``<root>/<output>/<experiment>/<hash>-seed<seed>/``.

    Relative ``output`` directories resolve against the ``root`` config value.
    Re-running the same config and seed rewrites the same files byte for byte.
    """

    def _root(self) -> Path:
        return Path(self.config.get("root", "."))

    def open_run(self, *, experiment, config_hash, version, master_seed, output) -> RunRecord:
        base = Path(output)
        if not base.is_absolute():
            base = self._root() / base
        directory = base / experiment / f"{config_hash[:12]}-seed{master_seed}"
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise RunStoreError(f"cannot create run directory {directory}: {exc}") from exc
        LOGGER.info("Writing %s run to %s", experiment, directory)
        return RunRecord(
            experiment=experiment,
            config_hash=config_hash,
            version=version,
            master_seed=master_seed,
            directory=str(directory),
        )

    def _target(self, record: RunRecord, filename: str) -> Path:
        return Path(record.directory) / filename

    def write_table(self, record: RunRecord, name: str, frame: pd.DataFrame) -> str:
        if name in record.files:
            raise RunStoreError(f"table {name!r} already written for this run")
        filename = f"{name}.csv"
        path = self._target(record, filename)
        try:
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        except OSError as exc:
            raise RunStoreError(f"cannot write {path}: {exc}") from exc
        record.files[name] = filename
        LOGGER.debug("Wrote %d rows to %s", len(frame), path)
        return str(path)

    def write_text(self, record: RunRecord, filename: str, text: str) -> str:
        path = self._target(record, filename)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise RunStoreError(f"cannot write {path}: {exc}") from exc
        return str(path)

    def finalize(self, record: RunRecord) -> str:
        record.metadata["wall_clock_s"] = time.monotonic() - record.started
        payload = record.to_dict()
        return self.write_text(
            record, SIDECAR_NAME, json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
        )
