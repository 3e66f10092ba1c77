"""Replica seeds, job payloads and their inline execution."""

from __future__ import annotations

import numpy as np
import pytest

from nanonet_kmc.engine import EventDomainError
from nanonet_kmc.experiments import Stream, build_setup, execute_job, replica_seed
from nanonet_kmc.experiments.runner import (
    GateVoltages,
    draw_controls,
    electrodes_from_payload,
    electrodes_to_payload,
    gate_job,
    gate_voltages_mv,
    point_job,
)
from nanonet_kmc.topology import ElectrodeConfigError


def test_replica_seed_depends_on_master_seed_and_key():
    seed = replica_seed(7, (Stream.GATES, 0))

    assert replica_seed(7, (Stream.GATES, 0)) == seed
    assert replica_seed(7, (Stream.GATES, 1)) != seed
    assert replica_seed(8, (Stream.GATES, 0)) != seed
    assert replica_seed(7, (Stream.IV, 0)) != seed
    assert 0 <= seed < 2**32


def test_gate_voltages_follow_electrode_roles(small_config):
    electrodes = small_config.electrode_config()

    voltages = gate_voltages_mv(electrodes, [5.0], (1, 0), input_high_mv=40.0, scale=0.5)

    assert voltages.tolist() == [20.0, 0.0, 5.0, 0.0]


def test_controls_drawn_inside_scaled_range():
    controls = draw_controls(np.random.default_rng(0), 500, control_range_mv=50.0, scale=0.5)

    assert controls.shape == (500,)
    assert np.all(np.abs(controls) <= 25.0)
    assert controls.min() < -20.0 < 20.0 < controls.max()


def test_electrode_payload_round_trip(small_config):
    electrodes = small_config.electrode_config()

    restored = electrodes_from_payload(electrodes_to_payload(electrodes))

    assert restored == electrodes


def test_point_job_takes_exactly_one_voltage_source(small_config):
    electrodes = small_config.electrode_config()

    with pytest.raises(EventDomainError):
        point_job(small_config, electrodes, 0, (Stream.IV, 0))
    with pytest.raises(EventDomainError):
        point_job(
            small_config, electrodes, 0, (Stream.IV, 0), voltages_mv=[0, 0, 0, 0], random_range_mv=5
        )


def test_unknown_job_kind_rejected():
    with pytest.raises(EventDomainError, match="unknown job kind"):
        execute_job({"kind": "sweep"})


def test_gate_job_is_reproducible(small_config):
    electrodes = small_config.electrode_config()
    job = gate_job(
        small_config, electrodes, 4, (Stream.GATES, 4), GateVoltages(40.0, 50.0, scale=1.0)
    )

    first = execute_job(job)
    second = execute_job(job)

    assert first["seed"] == second["seed"] == replica_seed(7, (Stream.GATES, 4))
    assert first["controls_mv"] == second["controls_mv"]
    assert len(first["controls_mv"]) == 1
    assert [run["termination"] for run in first["runs"]] == [
        run["termination"] for run in second["runs"]
    ]
    np.testing.assert_array_equal(
        [run["current"] for run in first["runs"]], [run["current"] for run in second["runs"]]
    )


def test_random_point_job_grounds_the_output(small_config):
    electrodes = small_config.electrode_config()
    job = point_job(small_config, electrodes, 2, (Stream.CORRELATION_MAP, 2), random_range_mv=30.0)

    result = execute_job(job)

    assert result["sample_id"] == 2
    assert result["voltages_mv"][electrodes.output_index] == 0.0
    assert all(abs(v) <= 30.0 for v in result["voltages_mv"])
    assert result["termination"] in {
        "uncertainty_reached", "max_events", "zero_current", "frozen_state"
    }


def test_build_setup_checks_foreign_layouts(small_config):
    bigger = small_config.with_grid(5, 5).electrode_config()
    setup = build_setup(small_config)

    assert setup.model.n_np == 9
    with pytest.raises(ElectrodeConfigError):
        build_setup(small_config, bigger)
