"""Django settings supporting standalone execution of nanonet_kmc."""

from __future__ import annotations

import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent


def env_bool(name: str, default: bool = False) -> bool:
    """Return a boolean value from an environment variable."""

    value = os.environ.get(name)
    if value is None:
        return default
    return value.lower() in {"1", "true", "yes", "on"}


def env_int(name: str, default: int) -> int:
    """Return an integer value from an environment variable."""

    value = os.environ.get(name)
    if value is None or not value.strip():
        return default
    return int(value)


SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "nanonet_kmc")
DEBUG = env_bool("DJANGO_DEBUG", True)
ALLOWED_HOSTS: list[str] = []

INSTALLED_APPS = [
    "nanonet_kmc",
]

DATABASES: dict = {}

LANGUAGE_CODE = "en-us"
TIME_ZONE = os.environ.get("DJANGO_TIME_ZONE", "UTC")
USE_TZ = True

###############################################################################
# SIMULATION SETTINGS
###############################################################################

NANONET_RUN_CONFIG = os.environ.get(
    "NANONET_RUN_CONFIG", str(BASE_DIR / "config" / "runs" / "default.yaml")
)
NANONET_OUTPUT_DIR = os.environ.get("NANONET_OUTPUT_DIR", str(BASE_DIR))
NANONET_RUN_STORE = os.environ.get(
    "NANONET_RUN_STORE", "nanonet_kmc.storage.backends.local.LocalRunStore"
)
NANONET_RUN_STORE_CONFIG: dict = {}
NANONET_USE_CELERY = env_bool("NANONET_USE_CELERY", False)
NANONET_WORKERS = env_int("NANONET_WORKERS", os.cpu_count() or 1)
NANONET_TRACE_EVENTS = env_bool("NANONET_TRACE_EVENTS", False)

###############################################################################
# CELERY SETTINGS
###############################################################################

CELERY_BROKER_URL = os.environ.get("CELERY_BROKER_URL", "redis://localhost:6379/0")
CELERY_RESULT_BACKEND = os.environ.get(
    "CELERY_RESULT_BACKEND", "redis://localhost:6379/0"
)
CELERY_TASK_DEFAULT_QUEUE = os.environ.get(
    "CELERY_TASK_DEFAULT_QUEUE", "nanonet_replicas"
)
CELERY_TASK_ALWAYS_EAGER = not NANONET_USE_CELERY
CELERY_WORKER_CONCURRENCY = NANONET_WORKERS
CELERY_WORKER_PREFETCH_MULTIPLIER = 1
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"

###############################################################################
# MISC SETTINGS
###############################################################################

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        }
    },
    "root": {"handlers": ["console"], "level": "INFO"},
    "loggers": {
        "nanonet_kmc.engine": {"level": os.environ.get("NANONET_ENGINE_LOG_LEVEL", "INFO")},
    },
}
