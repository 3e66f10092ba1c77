"""Run-config parsing, validation and the YAML emitter."""

from __future__ import annotations

import logging

import pytest
import yaml

from nanonet_kmc.runconfig import (
    RunConfigError,
    config_from_dict,
    config_hash,
    emit_config,
    parse_config,
    parse_config_text,
)


def test_default_run_config_parses(settings):
    config = parse_config(settings.NANONET_RUN_CONFIG)

    assert config.n_np == 49
    assert config.electrodes.policy == "setup_b"
    assert config.electrodes.n_electrodes == 8
    assert config.simulation.temperature_k == 0.28
    assert config.simulation.resistance_ohm == 25e6
    assert config.electrostatics.n_terms == 10
    assert config.electrode_config().attached == (0, 3, 21, 6, 42, 41, 47, 48)


def test_default_layout_puts_controls_next_to_the_output(settings):
    config = parse_config(settings.NANONET_RUN_CONFIG)
    topology = config.topology()
    electrodes = config.electrode_config(topology)
    output = electrodes.electrodes[electrodes.output_index].attached_np

    distances = {
        electrode.label: topology.graph_distance(electrode.attached_np, output)
        for electrode in electrodes.electrodes
        if electrode.label != "E7"
    }

    assert distances["E5"] == 1
    assert distances["E6"] == 1
    assert min(distances.values()) == 1
    assert distances["E0"] == 12


def test_small_config_builds_network(small_config):
    electrodes = small_config.electrode_config()

    assert small_config.n_np == 9
    assert electrodes.labels == ("E1", "E2", "E5", "E7")
    assert electrodes.output_index == 3
    assert small_config.simulation_params().temperature == 1.0


def test_low_resistance_rejected(small_config_data):
    small_config_data["simulation"]["resistance_ohm"] = 10e3

    with pytest.raises(RunConfigError) as exc:
        config_from_dict(small_config_data)

    assert any("R > 10 R_t" in item for item in exc.value.violations)


def test_single_row_network_rejected(small_config_data):
    small_config_data["network"]["rows"] = 1

    with pytest.raises(RunConfigError) as exc:
        config_from_dict(small_config_data)

    assert any(item.startswith("network:") for item in exc.value.violations)


def test_too_few_series_terms_rejected(small_config_data):
    small_config_data["electrostatics"]["n_terms"] = 2

    with pytest.raises(RunConfigError) as exc:
        config_from_dict(small_config_data)

    assert exc.value.violations == ["electrostatics.n_terms: must be >= 3"]


def test_every_violation_is_reported(small_config_data):
    small_config_data["network"]["colour"] = "gold"
    del small_config_data["simulation"]["temperature_k"]
    small_config_data["sampling"]["n_samples"] = "many"
    small_config_data["extras"] = {}

    with pytest.raises(RunConfigError) as exc:
        config_from_dict(small_config_data)

    violations = exc.value.violations
    assert "network.colour: unknown key" in violations
    assert "simulation.temperature_k: required" in violations
    assert "extras: unknown section" in violations
    assert any(item.startswith("sampling.n_samples:") for item in violations)
    assert len(violations) == 4


def test_missing_required_section():
    with pytest.raises(RunConfigError) as exc:
        config_from_dict({"network": {"rows": 3, "cols": 3, "radius_nm": 10.0, "spacing_nm": 1.0}})

    assert "electrostatics: required section" in exc.value.violations
    assert "simulation: required section" in exc.value.violations


def test_yaml_exponent_without_dot_is_a_string(small_config_data):
    text = yaml.safe_dump(small_config_data).replace("25000000.0", "25e6")

    with pytest.raises(RunConfigError, match="simulation.resistance_ohm"):
        parse_config_text(text)


def test_malformed_yaml_and_missing_file(tmp_path):
    with pytest.raises(RunConfigError, match="yaml"):
        parse_config_text("network: [1, 2")
    with pytest.raises(RunConfigError, match="no such config file"):
        parse_config(tmp_path / "absent.yaml")


def test_reference_scaling_factor_must_be_one(small_config_data):
    small_config_data["voltages"]["scaling"][49] = 2.0

    with pytest.raises(RunConfigError, match=r"scaling\[49\]"):
        config_from_dict(small_config_data)


def test_scaling_keys_accept_strings(small_config_data):
    small_config_data["voltages"]["scaling"] = {"9": 1.0, "25": 0.5}

    config = config_from_dict(small_config_data)

    assert config.voltages.scaling == {9: 1.0, 25: 0.5}


def test_emitted_config_parses_back(small_config, write_config, small_config_data):
    text = emit_config(small_config)

    assert parse_config_text(text) == small_config
    assert parse_config(write_config(small_config_data)) == small_config


def test_config_hash_tracks_content(small_config):
    same = config_hash(small_config)
    other = config_hash(small_config.with_overrides(seed=8))

    assert config_hash(small_config) == same
    assert other != same
    assert len(same) == 64


def test_overrides_and_grid_changes(small_config):
    changed = small_config.with_overrides(seed=3, samples=10, output="elsewhere")
    bigger = small_config.with_grid(5, 5).with_policy("setup_b")

    assert changed.sampling.master_seed == 3
    assert changed.sampling.n_samples == 10
    assert changed.output.directory == "elsewhere"
    assert bigger.n_np == 25
    assert bigger.electrodes.policy == "setup_b"
    assert small_config.n_np == 9


def test_weak_blockade_is_logged(small_config_data, caplog):
    small_config_data["simulation"]["temperature_k"] = 300.0

    with caplog.at_level(logging.WARNING, logger="nanonet_kmc.runconfig.loader"):
        config_from_dict(small_config_data)

    assert "Weak Coulomb blockade" in caplog.text
