"""Celery tasks running simulation replicas."""

from __future__ import annotations

import logging
from typing import Any, Dict, List, Sequence

from celery import group, shared_task
from django.conf import settings

from nanonet_kmc.experiments.runner import execute_job

LOGGER = logging.getLogger(__name__)


@shared_task
def run_replica(payload: Dict[str, Any]) -> Dict[str, Any]:
    return execute_job(payload)


def _run_inline(payload: Dict[str, Any]) -> Dict[str, Any]:
    try:
        return run_replica.apply(args=(payload,)).get()
    except Exception as exc:  # pragma: no cover - fallback path
        LOGGER.debug("run_replica.apply failed (%s); falling back to direct call", exc)
        return execute_job(payload)


def dispatch_replicas(payloads: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Run replica jobs on Celery workers or inline.

    Args:
        payloads: Jobs built by ``experiments.runner``; each carries its own seed key.

    Returns:
        One result per payload, in payload order regardless of completion order.
    """

    payloads = list(payloads)
    if not payloads:
        return []
    if getattr(settings, "NANONET_USE_CELERY", False):
        LOGGER.info("Dispatching %d replicas to Celery", len(payloads))
        result = group(run_replica.s(payload) for payload in payloads).apply_async()
        return list(result.get())
    return [_run_inline(payload) for payload in payloads]
