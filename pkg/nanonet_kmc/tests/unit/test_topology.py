"""Grid construction, electrode placement and the control-series layouts."""

from __future__ import annotations

import pytest

from nanonet_kmc.topology import (
    ControlSeries,
    Electrode,
    ElectrodeConfig,
    ElectrodeConfigError,
    PlacementKind,
    PlacementPolicy,
    Role,
    TopologyError,
    build_grid,
    build_line,
    control_series_configs,
    control_series_layout,
    place_electrodes,
)


def test_grid_has_four_neighbour_junctions():
    topology = build_grid(7, 7)

    assert topology.n_np == 49
    assert len(topology.adjacency) == 2 * 7 * 6
    assert topology.neighbors(24) == (17, 23, 25, 31)
    assert topology.degree(0) == 2
    assert topology.degree(3) == 3
    assert topology.is_adjacent(25, 24)
    assert not topology.is_adjacent(0, 8)


def test_grid_coordinates_round_trip():
    topology = build_grid(3, 4)

    assert topology.coords(7) == (1, 3)
    assert topology.index(1, 3) == 7
    assert topology.graph_distance(0, 11) == 5
    with pytest.raises(TopologyError):
        topology.index(3, 0)


def test_boundary_excludes_interior():
    topology = build_grid(3, 3)

    assert topology.boundary() == (0, 1, 2, 3, 5, 6, 7, 8)
    assert not topology.is_boundary(4)


@pytest.mark.parametrize("rows, cols", [(1, 5), (5, 1), (0, 3)])
def test_grid_rejects_degenerate_dimensions(rows, cols):
    with pytest.raises(TopologyError):
        build_grid(rows, cols)


def test_line_supports_single_island():
    single = build_line(1)
    pair = build_line(2)

    assert single.n_np == 1
    assert single.adjacency == frozenset()
    assert pair.pairs == ((0, 1),)


def test_setup_a_positions_on_seven_by_seven():
    topology = build_grid(7, 7)

    config = place_electrodes(topology, PlacementPolicy.setup_a())

    assert config.labels == ("E0", "E1", "E2", "E3", "E4", "E5", "E6", "E7")
    assert config.attached == (0, 3, 21, 6, 42, 27, 45, 48)
    assert config.input_indices == (1, 2)
    assert config.electrodes[config.output_index].label == "E7"
    assert config.n_controls == 5


def test_setup_b_moves_the_output_flanking_electrodes():
    topology = build_grid(7, 7)

    config = place_electrodes(topology, PlacementPolicy.setup_b())

    assert config.attached[config.index_of("E5")] == 41
    assert config.attached[config.index_of("E6")] == 47
    assert all(topology.is_boundary(i) for i in config.attached)


def test_fewer_electrodes_keep_inputs_and_output():
    config = place_electrodes(build_grid(3, 3), PlacementPolicy.setup_a(), n_electrodes=3)

    assert config.labels == ("E1", "E2", "E7")
    assert config.n_controls == 0


def test_too_many_electrodes_rejected():
    with pytest.raises(ElectrodeConfigError):
        place_electrodes(build_grid(7, 7), PlacementPolicy.setup_a(), n_electrodes=9)


def test_explicit_placement_needs_roles():
    topology = build_grid(4, 4)
    policy = PlacementPolicy.explicit([(0, 1), (1, 0), (3, 3)])

    with pytest.raises(ElectrodeConfigError):
        place_electrodes(topology, policy, n_electrodes=3)

    config = place_electrodes(
        topology, policy, n_electrodes=3, roles=[Role.INPUT1, Role.INPUT2, Role.OUTPUT]
    )
    assert config.attached == (1, 4, 15)
    assert policy.kind is PlacementKind.EXPLICIT


def test_explicit_interior_position_rejected():
    topology = build_grid(4, 4)
    policy = PlacementPolicy.explicit([(0, 1), (1, 1), (3, 3)])

    with pytest.raises(ElectrodeConfigError, match="interior"):
        place_electrodes(
            topology, policy, n_electrodes=3, roles=[Role.INPUT1, Role.INPUT2, Role.OUTPUT]
        )


def test_role_multiplicity_enforced():
    with pytest.raises(ElectrodeConfigError, match="output"):
        ElectrodeConfig(
            electrodes=(
                Electrode("A", 0, Role.INPUT1),
                Electrode("B", 1, Role.INPUT2),
            )
        )
    with pytest.raises(ElectrodeConfigError, match="share"):
        ElectrodeConfig(
            electrodes=(
                Electrode("A", 0, Role.INPUT1),
                Electrode("B", 0, Role.INPUT2),
                Electrode("C", 2, Role.OUTPUT),
            )
        )


def test_single_island_layout_allows_shared_np():
    config = ElectrodeConfig(
        electrodes=(Electrode("S", 0, Role.INPUT1), Electrode("D", 0, Role.OUTPUT)),
        require_inputs=False,
        allow_shared_np=True,
    )

    assert config.attached == (0, 0)
    assert config.output_index == 1


def test_with_roles_reassigns_inputs_and_keeps_output():
    config = place_electrodes(build_grid(7, 7), PlacementPolicy.setup_a())

    swapped = config.with_roles({"E0": Role.INPUT1, "E3": Role.INPUT2})

    assert swapped.electrodes[swapped.input_indices[0]].label == "E0"
    assert swapped.electrodes[swapped.input_indices[1]].label == "E3"
    assert swapped.electrodes[swapped.output_index].label == "E7"
    assert swapped.electrodes[swapped.index_of("E1")].role is Role.CONTROL


def test_control_series_layout_has_nine_controls():
    layout = control_series_layout(build_grid(7, 7))

    assert layout.n_controls == 9
    assert len(layout) == 12
    assert layout.labels[:2] == ("I1", "I2")
    assert layout.attached[layout.output_index] == 48


def test_control_series_a_and_b_keep_opposite_ends():
    layout = control_series_layout(build_grid(7, 7))

    series_a = control_series_configs(layout, ControlSeries.A, 2)
    series_b = control_series_configs(layout, "B", 2)

    assert [e.label for e in series_a.controls] == ["C1", "C2"]
    assert [e.label for e in series_b.controls] == ["C8", "C9"]
    assert control_series_configs(layout, "A", 0).n_controls == 0
    assert control_series_configs(layout, "B", 9).labels == layout.labels


def test_control_series_rejects_out_of_range_count():
    layout = control_series_layout(build_grid(7, 7))

    with pytest.raises(ElectrodeConfigError):
        control_series_configs(layout, "A", 10)
    with pytest.raises(ElectrodeConfigError):
        control_series_layout(build_grid(4, 4))
