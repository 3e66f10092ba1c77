from pathlib import Path

SECRET_KEY = "test-secret"
INSTALLED_APPS = [
    "nanonet_kmc",
]
MIDDLEWARE = []
DATABASES = {}
USE_TZ = True
NANONET_RUN_CONFIG = str(Path(__file__).resolve().parent.parent / "config" / "runs" / "default.yaml")
NANONET_USE_CELERY = False
NANONET_WORKERS = 1
NANONET_TRACE_EVENTS = False
CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True
