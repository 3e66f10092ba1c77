"""Long simulator runs checked against the stationary-current oracle and blockade physics.

Deselected by default; run with ``pytest -m slow``.
"""

from __future__ import annotations

import numpy as np
import pytest

from nanonet_kmc.constants import MILLIVOLT
from nanonet_kmc.electrostatics import potentials
from nanonet_kmc.engine import KineticMonteCarlo, SimulationParams, stationary_current
from nanonet_kmc.experiments import build_setup, run_iv_sweep
from nanonet_kmc.runconfig import parse_config
from nanonet_kmc.tests.unit.device_fixtures import single_island, two_islands

pytestmark = pytest.mark.slow

BIAS_MV = (5.0, 10.0, 15.0, 25.0, 40.0)
ORACLE_PARAMS = SimulationParams(
    temperature=20.0,
    equilibration_events=5_000,
    block_events=5_000,
    min_blocks=20,
    u_threshold=0.01,
    max_events=5_000_000,
)


@pytest.mark.parametrize("device", [single_island, two_islands], ids=["one_np", "two_np"])
@pytest.mark.parametrize("bias_mv", BIAS_MV)
def test_kmc_matches_stationary_current(device, bias_mv):
    topology, electrodes, model = device()
    voltages = [bias_mv * MILLIVOLT, 0.0]

    exact = stationary_current(topology, electrodes, model, ORACLE_PARAMS, voltages).current
    estimate = KineticMonteCarlo(
        topology,
        electrodes,
        model,
        ORACLE_PARAMS,
        voltages,
        np.random.default_rng(int(bias_mv * 10)),
    ).run()

    assert abs(estimate.current - exact) <= 3 * estimate.uncertainty * abs(estimate.current)


def test_incremental_potentials_stay_exact_over_long_runs(settings):
    config = parse_config(settings.NANONET_RUN_CONFIG)
    setup = build_setup(config)
    voltages = np.array([0.0, 10.0, 10.0, -20.0, 35.0, 15.0, -40.0, 0.0]) * MILLIVOLT
    simulator = KineticMonteCarlo(
        setup.topology,
        setup.electrodes,
        setup.model,
        config.simulation_params(temperature=5.0),
        voltages,
        np.random.default_rng(3),
    )

    for _ in range(1_000_000):
        if not simulator.step():
            break

    state = simulator.state
    expected = potentials(setup.model, state.charges)
    assert np.abs(state.phi - expected).max() <= 1e-9 * max(np.abs(expected).max(), 1e-3)


def test_blockade_plateau_lifts_with_temperature(settings):
    config = parse_config(settings.NANONET_RUN_CONFIG)

    cold = run_iv_sweep(config, "E1", grid_mv=[-2.0, -1.0, 1.0, 2.0, 20.0], temperature=0.28)
    warm = run_iv_sweep(config, "E1", grid_mv=[2.0, 20.0], temperature=77.0)

    reference = abs(cold.current_at(20.0))
    assert reference > 0.0
    for u_mv in (-2.0, -1.0, 1.0, 2.0):
        assert abs(cold.current_at(u_mv)) < 0.05 * reference
    assert abs(warm.current_at(2.0)) > 0.2 * abs(warm.current_at(20.0))
