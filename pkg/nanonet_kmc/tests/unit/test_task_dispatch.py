"""Unit tests for the replica dispatcher that toggles Celery usage."""

from __future__ import annotations

from unittest.mock import MagicMock, patch

from nanonet_kmc.tasks import dispatch_replicas


def test_dispatch_replicas_async(settings):
    settings.NANONET_USE_CELERY = True
    with patch("nanonet_kmc.tasks.group") as group:
        group_result = MagicMock()
        group_result.get.return_value = [{"sample_id": 0}, {"sample_id": 1}]
        group.return_value.apply_async.return_value = group_result
        results = dispatch_replicas([{"kind": "point"}, {"kind": "point"}])

    group.return_value.apply_async.assert_called_once_with()
    assert results == [{"sample_id": 0}, {"sample_id": 1}]


def test_dispatch_replicas_sync(settings):
    settings.NANONET_USE_CELERY = False
    with patch("nanonet_kmc.tasks.run_replica.apply") as apply_sync, patch(
        "nanonet_kmc.tasks.execute_job"
    ) as execute_job:
        eager_result = MagicMock()
        eager_result.get.return_value = {"sample_id": 3}
        apply_sync.return_value = eager_result
        results = dispatch_replicas([{"sample_id": 3}])

    apply_sync.assert_called_once_with(args=({"sample_id": 3},))
    eager_result.get.assert_called_once_with()
    execute_job.assert_not_called()
    assert results == [{"sample_id": 3}]


def test_dispatch_replicas_sync_fallback(settings):
    settings.NANONET_USE_CELERY = False
    with patch(
        "nanonet_kmc.tasks.run_replica.apply", side_effect=RuntimeError("redis")
    ) as apply_sync, patch(
        "nanonet_kmc.tasks.execute_job", return_value={"sample_id": 5}
    ) as execute_job:
        results = dispatch_replicas([{"sample_id": 5}])

    apply_sync.assert_called_once_with(args=({"sample_id": 5},))
    execute_job.assert_called_once_with({"sample_id": 5})
    assert results == [{"sample_id": 5}]


def test_dispatch_replicas_keeps_payload_order(settings):
    settings.NANONET_USE_CELERY = False
    with patch("nanonet_kmc.tasks.run_replica.apply", side_effect=RuntimeError("offline")), patch(
        "nanonet_kmc.tasks.execute_job", side_effect=lambda payload: {"id": payload["id"] * 10}
    ):
        results = dispatch_replicas([{"id": 2}, {"id": 1}, {"id": 3}])

    assert results == [{"id": 20}, {"id": 10}, {"id": 30}]
    assert dispatch_replicas([]) == []
