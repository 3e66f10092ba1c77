"""Image-charge series and the assembled capacitance matrix."""

from __future__ import annotations

import math

import numpy as np
import pytest

from nanonet_kmc.constants import ELEMENTARY_CHARGE, EPSILON_0, NANOMETRE
from nanonet_kmc.electrostatics import (
    CapacitanceDomainError,
    Permittivities,
    assemble_capacitance_matrix,
    dump_capacitance_csv,
    internal_energy,
    mutual_capacitance,
    potentials,
    self_capacitance,
)
from nanonet_kmc.topology import PlacementPolicy, build_grid, build_line, place_electrodes

RADIUS = 10.0
SPACING = 1.0


def test_mutual_series_matches_leading_image_terms():
    distance = 2 * RADIUS + SPACING
    r2, d2 = RADIUS**2, distance**2
    expected = (
        4 * math.pi * EPSILON_0 * 2.6 * r2 / distance * NANOMETRE
        * (1 + r2 / (d2 - 2 * r2) + r2**2 / (d2**2 - 4 * d2 * r2 + 3 * r2**2))
    )

    assert mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=3) == pytest.approx(expected, rel=1e-12)


def test_self_series_matches_leading_image_terms():
    distance = 2 * RADIUS + SPACING
    isolated = 4 * math.pi * EPSILON_0 * 3.9 * RADIUS * NANOMETRE

    assert self_capacitance(RADIUS, SPACING, 3.9, n_terms=1) == pytest.approx(isolated, rel=1e-12)
    assert self_capacitance(RADIUS, SPACING, 3.9, n_terms=2) == pytest.approx(
        isolated * (1 - RADIUS / distance), rel=1e-12
    )


def test_series_converge_with_more_terms():
    c50 = mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=50)
    c200 = mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=200)
    s50 = self_capacitance(RADIUS, SPACING, 3.9, n_terms=50)
    s200 = self_capacitance(RADIUS, SPACING, 3.9, n_terms=200)

    assert c50 == pytest.approx(c200, rel=1e-10)
    assert s50 == pytest.approx(s200, rel=1e-6)
    assert c50 > mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=3)
    c10 = mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=10)
    assert abs(c10 - mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=11)) < 1e-3 * c10


@pytest.mark.parametrize(
    "radius, spacing, eps, n_terms",
    [(0.0, 1.0, 2.6, 10), (10.0, -1.0, 2.6, 10), (10.0, 1.0, 2.6, 0), (10.0, 1.0, 2.6, 2)],
)
def test_series_reject_non_physical_input(radius, spacing, eps, n_terms):
    with pytest.raises(CapacitanceDomainError):
        mutual_capacitance(radius, spacing, eps, n_terms)


def test_three_term_junction_capacitance_of_the_reference_geometry():
    assert mutual_capacitance(RADIUS, SPACING, 2.6, n_terms=3) == pytest.approx(2.2e-18, rel=0.05)


def test_matrix_needs_at_least_three_series_terms():
    with pytest.raises(CapacitanceDomainError, match=">= 3"):
        assemble_capacitance_matrix(build_grid(2, 2), None, Permittivities(), n_terms=2)


def test_permittivities_below_vacuum_rejected():
    with pytest.raises(CapacitanceDomainError):
        Permittivities(eps_m=0.5, eps_sio2=3.9)


def test_matrix_structure_on_grid():
    topology = build_grid(3, 3)
    model = assemble_capacitance_matrix(topology, None, Permittivities())
    matrix = np.asarray(model.matrix)

    np.testing.assert_allclose(matrix, matrix.T)
    assert matrix[0, 1] == pytest.approx(-model.junction_capacitance)
    assert matrix[0, 4] == 0.0
    assert matrix[4, 4] == pytest.approx(4 * model.junction_capacitance + model.self_capacitance)
    assert model.contributions[0].total == pytest.approx(matrix[0, 0])
    np.testing.assert_allclose(matrix @ model.inverse, np.eye(9), atol=1e-10)
    assert np.all(np.linalg.eigvalsh(matrix) > 0)


def test_electrodes_add_one_junction_to_the_diagonal():
    topology = build_grid(3, 3)
    electrodes = place_electrodes(topology, PlacementPolicy.setup_a(), n_electrodes=4)
    bare = assemble_capacitance_matrix(topology, None, Permittivities())
    wired = assemble_capacitance_matrix(topology, electrodes, Permittivities())

    delta = np.diag(wired.matrix) - np.diag(bare.matrix)
    expected = np.zeros(9)
    expected[list(electrodes.attached)] = wired.junction_capacitance
    np.testing.assert_allclose(delta, expected, rtol=1e-12, atol=1e-30)
    assert wired.contributions[8].electrodes == pytest.approx(wired.junction_capacitance)


def test_two_island_chain():
    model = assemble_capacitance_matrix(build_line(2), None, Permittivities())
    c_m, c_s = model.junction_capacitance, model.self_capacitance

    np.testing.assert_allclose(model.matrix, [[c_m + c_s, -c_m], [-c_m, c_m + c_s]])


def test_degree_four_charging_energy_near_sixteen_mev():
    model = assemble_capacitance_matrix(build_grid(7, 7), None, Permittivities())

    energy = model.charging_energies_mev()[24]

    assert 8.0 <= energy <= 24.0
    assert model.min_charging_to_thermal_ratio(0.28) > 100


def test_potentials_and_energy():
    model = assemble_capacitance_matrix(build_grid(2, 2), None, Permittivities())
    charges = np.array([1, 0, 0, -1])

    phi = potentials(model, charges)

    np.testing.assert_allclose(phi, ELEMENTARY_CHARGE * model.inverse @ charges)
    assert internal_energy(charges, phi) > 0
    assert internal_energy(np.zeros(4), np.zeros(4)) == 0.0
    with pytest.raises(CapacitanceDomainError):
        potentials(model, [1, 0])


def test_dump_writes_labelled_square_csv(tmp_path):
    model = assemble_capacitance_matrix(build_grid(2, 2), None, Permittivities())

    path = dump_capacitance_csv(model, tmp_path / "debug" / "capacitance.csv")

    lines = path.read_text().splitlines()
    assert lines[0] == ",np_0,np_1,np_2,np_3"
    assert len(lines) == 5
