import copy
import os

import django
import pytest
import yaml

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tests.settings")
django.setup()

from nanonet_kmc.runconfig import config_from_dict  # noqa: E402

# 3x3 grid with four Setup A electrodes (E1, E2 inputs, E5 control, E7 output) and
# event budgets small enough for unit tests.
SMALL_CONFIG = {
    "network": {"rows": 3, "cols": 3, "radius_nm": 10.0, "spacing_nm": 1.0},
    "electrostatics": {"eps_m": 2.6, "eps_sio2": 3.9},
    "electrodes": {"policy": "setup_a", "n_electrodes": 4},
    "simulation": {
        "temperature_k": 1.0,
        "resistance_ohm": 25e6,
        "equilibration_events": 100,
        "block_events": 100,
        "min_blocks": 2,
        "max_events": 1000,
    },
    "voltages": {
        "input_high_mv": 40.0,
        "control_range_mv": 50.0,
        "iv_grid_mv": [0.0, 10.0, 20.0, 30.0, 40.0],
        "scaling": {9: 1.0, 25: 1.0},
    },
    "sampling": {"n_samples": 3, "master_seed": 7},
}


@pytest.fixture
def small_config_data():
    return copy.deepcopy(SMALL_CONFIG)


@pytest.fixture
def small_config(small_config_data):
    return config_from_dict(small_config_data)


@pytest.fixture
def write_config(tmp_path):
    def _write(data, name="run.yaml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(data, sort_keys=False), encoding="utf-8")
        return path

    return _write
