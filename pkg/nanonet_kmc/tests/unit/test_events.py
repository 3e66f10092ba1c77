"""Event catalog, rate table, selection and incremental state updates."""

from __future__ import annotations

import numpy as np
import pytest

from nanonet_kmc.constants import MILLIVOLT
from nanonet_kmc.electrostatics import Permittivities, assemble_capacitance_matrix, potentials
from nanonet_kmc.engine import (
    EventCatalog,
    EventDomainError,
    EventTable,
    FrozenStateError,
    KineticMonteCarlo,
    SimulationParams,
    SimulationState,
    advance_time,
    apply_event,
    build_event_table,
    select_event,
)
from nanonet_kmc.topology import PlacementPolicy, build_grid, place_electrodes


@pytest.fixture
def network():
    topology = build_grid(3, 3)
    electrodes = place_electrodes(topology, PlacementPolicy.setup_a(), n_electrodes=4)
    model = assemble_capacitance_matrix(topology, electrodes, Permittivities())
    return topology, electrodes, model


def _table(rates):
    rates = np.asarray(rates, dtype=float)
    return EventTable(delta_f=np.zeros_like(rates), rates=rates, cdf=np.cumsum(rates))


def test_catalog_lists_both_directions(network):
    topology, electrodes, model = network

    catalog = EventCatalog.build(topology, electrodes, model)

    assert len(catalog) == 2 * len(topology.pairs) + 2 * len(electrodes)
    assert catalog.describe(0) == ("np_0", "np_1")
    assert catalog.describe(1) == ("np_1", "np_0")
    first_electrode = 2 * len(topology.pairs)
    assert catalog.describe(first_electrode) == ("np_1", "E1")
    assert catalog.describe(first_electrode + 1) == ("E1", "np_1")
    assert catalog.output_electrode == 3


def test_junction_resistance_override(network):
    topology, electrodes, model = network
    catalog = EventCatalog.build(topology, electrodes, model)
    params = SimulationParams(temperature=1.0, junction_resistances={(1, 0): 50e6})

    resistances = catalog.resistances(params)

    assert resistances[0] == resistances[1] == 50e6
    assert np.all(resistances[2:] == params.resistance)


def test_select_event_binary_search():
    table = _table([1.0, 2.0, 3.0])

    assert select_event(table, 1.0 / 6.0) == 0
    assert select_event(table, 0.5) == 1
    assert select_event(table, 0.51) == 2
    assert select_event(table, 1.0) == 2


def test_select_event_frequencies_follow_rates():
    table = _table([1.0, 3.0])
    rng = np.random.default_rng(3)

    picks = [select_event(table, 1.0 - rng.random()) for _ in range(4000)]

    assert np.mean(picks) == pytest.approx(0.75, abs=0.03)


def test_select_event_rejects_bad_draws_and_frozen_tables():
    with pytest.raises(EventDomainError):
        select_event(_table([1.0]), 0.0)
    with pytest.raises(FrozenStateError):
        select_event(_table([0.0, 0.0]), 0.5)


def test_advance_time():
    assert advance_time(1.0, 2.0, 1.0) == 1.0
    assert advance_time(0.0, 2.0, np.exp(-1.0)) == pytest.approx(0.5)
    with pytest.raises(EventDomainError):
        advance_time(0.0, 1.0, 0.0)
    with pytest.raises(FrozenStateError):
        advance_time(0.0, 0.0, 0.5)


def test_event_table_rates_match_free_energies(network):
    topology, electrodes, model = network
    catalog = EventCatalog.build(topology, electrodes, model)
    params = SimulationParams(temperature=1.0)
    state = SimulationState.initial(model, len(electrodes), np.random.default_rng(0))
    voltages = np.array([40.0, 0.0, 10.0, 0.0]) * MILLIVOLT

    table = build_event_table(state, catalog, voltages, params)

    injection = 2 * len(topology.pairs) + 1
    assert table.delta_f[injection] == pytest.approx(
        -1.602176634e-19 * 0.04 + catalog.charging_cost[injection]
    )
    assert table.k_tot == pytest.approx(table.rates.sum())
    assert np.all(np.diff(table.cdf) >= 0)


def test_apply_event_moves_one_charge(network):
    topology, electrodes, model = network
    catalog = EventCatalog.build(topology, electrodes, model)
    state = SimulationState.initial(model, len(electrodes), np.random.default_rng(0))
    injection = 2 * len(topology.pairs) + 1

    apply_event(state, model, catalog, injection)
    apply_event(state, model, catalog, 1)

    assert state.charges.tolist() == [1, 0, 0, 0, 0, 0, 0, 0, 0]
    assert state.injected.tolist() == [1, 0, 0, 0]
    np.testing.assert_allclose(state.phi, potentials(model, state.charges), rtol=1e-12)
    assert state.event_count == 2


def test_incremental_potentials_and_charge_bookkeeping(network):
    topology, electrodes, model = network
    params = SimulationParams(temperature=5.0)
    voltages = np.array([40.0, -30.0, 25.0, 0.0]) * MILLIVOLT
    simulator = KineticMonteCarlo(
        topology, electrodes, model, params, voltages, np.random.default_rng(11)
    )

    for _ in range(5000):
        if not simulator.step():
            break

    state = simulator.state
    expected = potentials(model, state.charges)
    scale = max(np.abs(expected).max(), 1e-3)
    assert np.abs(state.phi - expected).max() <= 1e-9 * scale
    assert state.charges.sum() == state.injected.sum() - state.extracted.sum()
    assert state.net_output_jumps == state.extracted[3] - state.injected[3]
