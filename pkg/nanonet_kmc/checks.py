"""System checks for the NANONET_* settings."""

from __future__ import annotations

from pathlib import PurePath
from typing import List

from django.conf import settings
from django.core.checks import Error, Tags, register

BOOLEAN_SETTINGS = ("NANONET_USE_CELERY", "NANONET_TRACE_EVENTS")
PATH_SETTINGS = ("NANONET_RUN_CONFIG", "NANONET_OUTPUT_DIR")


@register(Tags.compatibility)
def check_nanonet_settings(app_configs=None, **kwargs) -> List[Error]:  # noqa: ANN001
    errors: List[Error] = []
    for name in BOOLEAN_SETTINGS:
        value = getattr(settings, name, False)
        if not isinstance(value, bool):
            errors.append(Error(f"{name} must be a boolean, got {value!r}", id="nanonet_kmc.E001"))
    for name in PATH_SETTINGS:
        value = getattr(settings, name, None)
        if value is not None and not isinstance(value, (str, PurePath)):
            errors.append(Error(f"{name} must be a path, got {value!r}", id="nanonet_kmc.E002"))
    store = getattr(settings, "NANONET_RUN_STORE", None)
    if store is not None and (not isinstance(store, str) or "." not in store):
        errors.append(
            Error(
                f"NANONET_RUN_STORE must be a dotted class path, got {store!r}",
                id="nanonet_kmc.E003",
            )
        )
    store_config = getattr(settings, "NANONET_RUN_STORE_CONFIG", {})
    if not isinstance(store_config, dict):
        errors.append(
            Error("NANONET_RUN_STORE_CONFIG must be a dict", id="nanonet_kmc.E004")
        )
    workers = getattr(settings, "NANONET_WORKERS", 1)
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        errors.append(
            Error(
                f"NANONET_WORKERS must be a positive integer, got {workers!r}",
                id="nanonet_kmc.E005",
            )
        )
    return errors
