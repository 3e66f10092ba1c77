"""Image-charge capacitances and the Maxwell capacitance matrix of a network.

Both series come from the image-charge recursion for two spheres. Writing the
recursion in hyperbolic form gives one closed expression per term:

* mutual capacitance, ``cosh(U) = (D**2 - 2 r**2) / (2 r**2)``::

      C_m = 4 pi eps0 eps_m r**2 / D * sum_k sinh(U) / sinh(k U)

* self capacitance next to a neighbour, ``cosh(b) = D / (2 r)``::

      C_s = 4 pi eps0 eps_SiO2 r * sum_k (-1)**(k + 1) sinh(b) / sinh(k b)

with ``D = 2 r + d`` the centre distance. The first three mutual terms are
``1``, ``r**2/(D**2 - 2 r**2)`` and ``r**4/(D**4 - 4 D**2 r**2 + 3 r**4)``; the
first two self terms are ``1`` and ``-r/D``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np
import pandas as pd
import scipy.linalg

from ..constants import BOLTZMANN, ELEMENTARY_CHARGE, EPSILON_0, MEV, NANOMETRE
from ..topology import ElectrodeConfig, NetworkTopology

LOGGER = logging.getLogger(__name__)

DEFAULT_N_TERMS = 10
MIN_SERIES_TERMS = 3
IDENTITY_TOLERANCE = 1e-10


class CapacitanceDomainError(ValueError):
    """Raised for non-physical geometry, permittivities or vector shapes."""


class SingularCapacitanceError(RuntimeError):
    """Raised when the assembled matrix cannot be inverted to full precision."""


@dataclass(frozen=True)
class Permittivities:
    eps_m: float = 2.6
    eps_sio2: float = 3.9

    def __post_init__(self) -> None:
        if self.eps_m < 1 or self.eps_sio2 < 1:
            raise CapacitanceDomainError(
                f"relative permittivities must be >= 1, got eps_m={self.eps_m}, "
                f"eps_sio2={self.eps_sio2}"
            )


def _check_series_inputs(
    radius: float, spacing: float, eps: float, n_terms: int, min_terms: int = MIN_SERIES_TERMS
) -> None:
    if radius <= 0 or spacing <= 0:
        raise CapacitanceDomainError(
            f"radius and spacing must be positive, got r={radius}, d={spacing}"
        )
    if eps <= 0:
        raise CapacitanceDomainError(f"permittivity must be positive, got {eps}")
    if n_terms < min_terms:
        raise CapacitanceDomainError(f"n_terms must be >= {min_terms}, got {n_terms}")


def _sinh_ratio_terms(angle: float, n_terms: int) -> np.ndarray:
    """``sinh(angle) / sinh(k angle)`` for ``k = 1..n_terms`` without overflow."""

    k = np.arange(1, n_terms + 1, dtype=float)
    return np.exp(-(k - 1) * angle) * (-np.expm1(-2 * angle)) / (-np.expm1(-2 * k * angle))


def mutual_capacitance(
    radius: float, spacing: float, eps_m: float, n_terms: int = DEFAULT_N_TERMS
) -> float:
    """Junction capacitance between two equal spheres in farads.

    Args:
        radius: NP radius in nm.
        spacing: Surface-to-surface gap in nm.
        eps_m: Relative permittivity of the molecular junction.
        n_terms: Number of image-charge terms.

    Raises:
        CapacitanceDomainError: For non-positive geometry, fewer than
            ``MIN_SERIES_TERMS`` terms or a degenerate series.
    """

    _check_series_inputs(radius, spacing, eps_m, n_terms)
    distance = 2 * radius + spacing
    cosh_u = (distance**2 - 2 * radius**2) / (2 * radius**2)
    if cosh_u <= 1:
        raise CapacitanceDomainError(f"series denominator non-positive for r={radius}, d={spacing}")
    terms = _sinh_ratio_terms(float(np.arccosh(cosh_u)), n_terms)
    prefactor = 4 * np.pi * EPSILON_0 * eps_m * (radius**2 / distance) * NANOMETRE
    return float(prefactor * terms.sum())


def self_capacitance(
    radius: float, spacing: float, eps_sio2: float, n_terms: int = DEFAULT_N_TERMS
) -> float:
    """Self capacitance of an NP embedded next to a neighbour, in farads.

    With ``n_terms=1`` this is the isolated-sphere value ``4 pi eps0 eps r``, so a
    single term is accepted here.
    """

    _check_series_inputs(radius, spacing, eps_sio2, n_terms, min_terms=1)
    distance = 2 * radius + spacing
    cosh_b = distance / (2 * radius)
    if cosh_b <= 1:
        raise CapacitanceDomainError(f"series denominator non-positive for r={radius}, d={spacing}")
    terms = _sinh_ratio_terms(float(np.arccosh(cosh_b)), n_terms)
    signs = np.where(np.arange(n_terms) % 2 == 0, 1.0, -1.0)
    prefactor = 4 * np.pi * EPSILON_0 * eps_sio2 * radius * NANOMETRE
    return float(prefactor * np.dot(signs, terms))


@dataclass(frozen=True)
class DiagonalContribution:
    junctions: float
    self_capacitance: float
    electrodes: float

    @property
    def total(self) -> float:
        return self.junctions + self.self_capacitance + self.electrodes


@dataclass(frozen=True, eq=False)
class CapacitanceModel:
    """Capacitance matrix ``C`` (farads), its cached inverse and diagonal breakdown."""

    matrix: np.ndarray
    inverse: np.ndarray
    contributions: Tuple[DiagonalContribution, ...]
    junction_capacitance: float
    self_capacitance: float

    @property
    def n_np(self) -> int:
        return int(self.matrix.shape[0])

    def charging_energies(self) -> np.ndarray:
        """``e**2 / C_ii`` per NP in joules."""

        return ELEMENTARY_CHARGE**2 / np.diag(self.matrix)

    def charging_energies_mev(self) -> np.ndarray:
        return self.charging_energies() / MEV

    def min_charging_to_thermal_ratio(self, temperature: float) -> float:
        return float(self.charging_energies().min() / (BOLTZMANN * temperature))


def assemble_capacitance_matrix(
    topology: NetworkTopology,
    electrodes: ElectrodeConfig | None,
    perms: Permittivities,
    n_terms: int = DEFAULT_N_TERMS,
) -> CapacitanceModel:
    """Build the Maxwell matrix and invert it once.

    Off-diagonals are ``-C_m`` for adjacent pairs. The diagonal collects the
    junctions, the self capacitance and one junction per attached electrode;
    electrodes are fixed-potential terminals and get no rows of their own.

    Raises:
        SingularCapacitanceError: If the inverse fails the identity check.
    """

    spec = topology.np_spec
    c_mutual = mutual_capacitance(spec.radius, spec.spacing, perms.eps_m, n_terms)
    c_self = self_capacitance(spec.radius, spec.spacing, perms.eps_sio2, n_terms)

    n = topology.n_np
    matrix = np.zeros((n, n))
    for i, j in topology.pairs:
        matrix[i, j] = matrix[j, i] = -c_mutual

    attached = np.zeros(n, dtype=int)
    if electrodes is not None:
        for np_index in electrodes.attached:
            attached[np_index] += 1

    contributions = []
    for i in range(n):
        contribution = DiagonalContribution(
            junctions=topology.degree(i) * c_mutual,
            self_capacitance=c_self,
            electrodes=attached[i] * c_mutual,
        )
        matrix[i, i] = contribution.total
        contributions.append(contribution)

    try:
        inverse = scipy.linalg.inv(matrix)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise SingularCapacitanceError(f"capacitance matrix inversion failed: {exc}") from exc
    residual = float(np.abs(matrix @ inverse - np.eye(n)).max())
    if residual > IDENTITY_TOLERANCE:
        raise SingularCapacitanceError(f"C @ C_inv deviates from identity by {residual:.3e}")

    matrix.setflags(write=False)
    inverse.setflags(write=False)
    LOGGER.debug(
        "Assembled %dx%d capacitance matrix (C_m=%.4e F, C_self=%.4e F)", n, n, c_mutual, c_self
    )
    return CapacitanceModel(
        matrix=matrix,
        inverse=inverse,
        contributions=tuple(contributions),
        junction_capacitance=c_mutual,
        self_capacitance=c_self,
    )


def _as_vector(values, n: int, name: str) -> np.ndarray:
    vector = np.asarray(values, dtype=float)
    if vector.shape != (n,):
        raise CapacitanceDomainError(f"{name} must have shape ({n},), got {vector.shape}")
    return vector


def potentials(model: CapacitanceModel, charges) -> np.ndarray:
    """NP potentials in volts for integer excess charges (units of e)."""

    q = _as_vector(charges, model.n_np, "charge vector")
    return ELEMENTARY_CHARGE * (model.inverse @ q)


def internal_energy(charges, phi) -> float:
    """Electrostatic energy ``q . phi / 2`` in joules (charges in units of e)."""

    q = np.asarray(charges, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if q.shape != phi.shape or q.ndim != 1:
        raise CapacitanceDomainError(
            f"charge and potential vectors differ in shape: {q.shape} vs {phi.shape}"
        )
    return float(0.5 * ELEMENTARY_CHARGE * np.dot(q, phi))


def dump_capacitance_csv(model: CapacitanceModel, path: str | Path) -> Path:
    """Write ``C`` in farads as a labelled square CSV."""

    labels = [f"np_{i}" for i in range(model.n_np)]
    frame = pd.DataFrame(np.asarray(model.matrix), index=labels, columns=labels)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, float_format="%.9e")
    return path
