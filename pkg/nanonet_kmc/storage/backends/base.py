"""Base classes and helpers for configuring run stores."""

from __future__ import annotations

import importlib
from typing import Any, Dict

import pandas as pd
from django.conf import settings

from nanonet_kmc.storage.records import RunRecord


class BaseRunStore:
    """Abstract interface for persisting the tables and metadata of experiment runs."""

    def __init__(self, *, config: Dict[str, Any]):
        """Initialize store configuration.

        Args:
            config: Dictionary of store specific configuration values.
        """

        self.config = config

    def open_run(
        self, *, experiment: str, config_hash: str, version: str, master_seed: int, output: str
    ) -> RunRecord:  # pragma: no cover - interface
        """Create the record of a new run rooted at ``output``."""

        raise NotImplementedError

    def write_table(
        self, record: RunRecord, name: str, frame: pd.DataFrame
    ) -> str:  # pragma: no cover - interface
        """Persist one CSV table and register it on ``record``."""

        raise NotImplementedError

    def write_text(
        self, record: RunRecord, filename: str, text: str
    ) -> str:  # pragma: no cover - interface
        """Persist an auxiliary text file such as the effective config."""

        raise NotImplementedError

    def finalize(self, record: RunRecord) -> str:  # pragma: no cover - interface
        """Write the JSON sidecar describing ``record`` and return its path."""

        raise NotImplementedError


def get_run_store() -> BaseRunStore:
    """Instantiate the configured run store."""

    store_path = getattr(
        settings,
        "NANONET_RUN_STORE",
        "nanonet_kmc.storage.backends.local.LocalRunStore",
    )
    module_path, class_name = store_path.rsplit(".", 1)
    module = importlib.import_module(module_path)
    store_class = getattr(module, class_name)
    config = dict(getattr(settings, "NANONET_RUN_STORE_CONFIG", {}))
    config.setdefault("root", str(getattr(settings, "NANONET_OUTPUT_DIR", ".")))
    return store_class(config=config)
