"""Electrode roles, placement policies and the control-count series layouts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .grid import NetworkTopology

LOGGER = logging.getLogger(__name__)

Position = Tuple[int, int]


class ElectrodeConfigError(ValueError):
    """Raised when an electrode layout breaks a role or attachment constraint."""


class Role(str, Enum):
    INPUT1 = "input1"
    INPUT2 = "input2"
    OUTPUT = "output"
    CONTROL = "control"


class PlacementKind(str, Enum):
    SETUP_A = "setup_a"
    SETUP_B = "setup_b"
    EXPLICIT = "explicit"


class ControlSeries(str, Enum):
    """A adds controls input-side first, B removes them input-side first."""

    A = "A"
    B = "B"


@dataclass(frozen=True)
class Electrode:
    label: str
    attached_np: int
    role: Role


@dataclass(frozen=True)
class ElectrodeConfig:
    """Ordered electrodes attached to a network.

    ``require_inputs`` is switched off only for layouts that are not used as gates
    (I-V sweeps on hand-built chains, the master-equation checks), and
    ``allow_shared_np`` only for single-island devices where source and drain meet
    on the same NP.
    """

    electrodes: Tuple[Electrode, ...]
    require_inputs: bool = True
    allow_shared_np: bool = False

    def __post_init__(self) -> None:
        labels = [electrode.label for electrode in self.electrodes]
        if len(set(labels)) != len(labels):
            raise ElectrodeConfigError(f"duplicate electrode labels in {labels}")
        counts = {role: 0 for role in Role}
        for electrode in self.electrodes:
            counts[electrode.role] += 1
        if counts[Role.OUTPUT] != 1:
            raise ElectrodeConfigError(
                f"exactly one output electrode required, got {counts[Role.OUTPUT]}"
            )
        if self.require_inputs and (counts[Role.INPUT1] != 1 or counts[Role.INPUT2] != 1):
            raise ElectrodeConfigError(
                "exactly two inputs (input1, input2) required, got "
                f"{counts[Role.INPUT1]} input1 and {counts[Role.INPUT2]} input2"
            )
        if counts[Role.INPUT1] > 1 or counts[Role.INPUT2] > 1:
            raise ElectrodeConfigError("an input role may be assigned at most once")
        attached = [electrode.attached_np for electrode in self.electrodes]
        if not self.allow_shared_np and len(set(attached)) != len(attached):
            raise ElectrodeConfigError(f"two electrodes share an attached NP: {attached}")

    def __len__(self) -> int:
        return len(self.electrodes)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(electrode.label for electrode in self.electrodes)

    @property
    def attached(self) -> Tuple[int, ...]:
        return tuple(electrode.attached_np for electrode in self.electrodes)

    @property
    def output_index(self) -> int:
        return self._index_of_role(Role.OUTPUT)

    @property
    def input_indices(self) -> Tuple[int, int]:
        return self._index_of_role(Role.INPUT1), self._index_of_role(Role.INPUT2)

    @property
    def control_indices(self) -> Tuple[int, ...]:
        return tuple(
            k for k, electrode in enumerate(self.electrodes) if electrode.role is Role.CONTROL
        )

    @property
    def controls(self) -> Tuple[Electrode, ...]:
        return tuple(self.electrodes[k] for k in self.control_indices)

    @property
    def n_controls(self) -> int:
        return len(self.control_indices)

    def index_of(self, label: str) -> int:
        for k, electrode in enumerate(self.electrodes):
            if electrode.label == label:
                return k
        raise ElectrodeConfigError(f"unknown electrode label {label!r}")

    def with_roles(self, roles: Mapping[str, Role]) -> "ElectrodeConfig":
        """Return a copy with the given labels re-assigned and all others made controls.

        The output keeps its role unless ``roles`` names a new one.
        """

        unknown = set(roles) - set(self.labels)
        if unknown:
            raise ElectrodeConfigError(f"unknown electrode labels {sorted(unknown)}")
        reassign_output = any(role is Role.OUTPUT for role in roles.values())
        electrodes = []
        for electrode in self.electrodes:
            if electrode.label in roles:
                role = roles[electrode.label]
            elif electrode.role is Role.OUTPUT and not reassign_output:
                role = Role.OUTPUT
            else:
                role = Role.CONTROL
            electrodes.append(replace(electrode, role=role))
        return replace(self, electrodes=tuple(electrodes))

    def validate_against(self, topology: NetworkTopology) -> None:
        for electrode in self.electrodes:
            if not 0 <= electrode.attached_np < topology.n_np:
                raise ElectrodeConfigError(
                    f"{electrode.label} attaches to NP {electrode.attached_np}, "
                    f"network has {topology.n_np}"
                )
            if not topology.is_boundary(electrode.attached_np):
                raise ElectrodeConfigError(
                    f"{electrode.label} attaches to interior NP {electrode.attached_np}"
                )

    def _index_of_role(self, role: Role) -> int:
        for k, electrode in enumerate(self.electrodes):
            if electrode.role is role:
                return k
        raise ElectrodeConfigError(f"no electrode with role {role.value}")


@dataclass(frozen=True)
class PlacementPolicy:
    kind: PlacementKind
    positions: Tuple[Position, ...] = ()

    @classmethod
    def setup_a(cls) -> "PlacementPolicy":
        return cls(kind=PlacementKind.SETUP_A)

    @classmethod
    def setup_b(cls) -> "PlacementPolicy":
        return cls(kind=PlacementKind.SETUP_B)

    @classmethod
    def explicit(cls, positions: Iterable[Position]) -> "PlacementPolicy":
        return cls(
            kind=PlacementKind.EXPLICIT,
            positions=tuple((int(row), int(col)) for row, col in positions),
        )


# Canonical eight-electrode layout. E7 is the output corner, E0 the corner opposite to
# it, E1/E2 the input edges and E5/E6 the right and bottom edges, moved next to the output
# under Setup B.
DEFAULT_ROLES: Dict[str, Role] = {
    "E0": Role.CONTROL,
    "E1": Role.INPUT1,
    "E2": Role.INPUT2,
    "E3": Role.CONTROL,
    "E4": Role.CONTROL,
    "E5": Role.CONTROL,
    "E6": Role.CONTROL,
    "E7": Role.OUTPUT,
}

# Order in which labels are kept when fewer than eight electrodes are requested.
_KEEP_ORDER = ("E7", "E1", "E2", "E5", "E6", "E0", "E3", "E4")


def _midpoint(length: int) -> int:
    # Even-length edges round toward the lower index.
    return (length - 1) // 2


def canonical_positions(topology: NetworkTopology, kind: PlacementKind) -> Dict[str, Position]:
    """Return the eight boundary positions of Setup A or Setup B keyed by label."""

    last_row, last_col = topology.rows - 1, topology.cols - 1
    mid_row, mid_col = _midpoint(topology.rows), _midpoint(topology.cols)
    positions = {
        "E0": (0, 0),
        "E1": (0, mid_col),
        "E2": (mid_row, 0),
        "E3": (0, last_col),
        "E4": (last_row, 0),
        "E5": (mid_row, last_col),
        "E6": (last_row, mid_col),
        "E7": (last_row, last_col),
    }
    if kind is PlacementKind.SETUP_B:
        positions["E5"] = (last_row - 1, last_col)
        positions["E6"] = (last_row, last_col - 1)
    return positions


def _resolve_roles(
    labels: Sequence[str], roles: Mapping[str, Role] | Sequence[Role] | None
) -> Dict[str, Role]:
    if roles is None:
        return {label: DEFAULT_ROLES.get(label, Role.CONTROL) for label in labels}
    if isinstance(roles, Mapping):
        unknown = set(roles) - set(labels)
        if unknown:
            raise ElectrodeConfigError(f"roles given for unplaced electrodes {sorted(unknown)}")
        return {label: Role(roles.get(label, Role.CONTROL)) for label in labels}
    roles = list(roles)
    if len(roles) != len(labels):
        raise ElectrodeConfigError(
            f"{len(roles)} roles given for {len(labels)} electrodes"
        )
    return {label: Role(role) for label, role in zip(labels, roles)}


def place_electrodes(
    topology: NetworkTopology,
    policy: PlacementPolicy,
    n_electrodes: int = 8,
    roles: Mapping[str, Role] | Sequence[Role] | None = None,
) -> ElectrodeConfig:
    """Attach electrodes to boundary NPs according to ``policy``.

    Setup A/B layouts expose up to eight positions (see ``canonical_positions``);
    explicit layouts are labelled ``E0..En-1`` in the order given and need ``roles``.

    Raises:
        ElectrodeConfigError: On role multiplicity violations, shared NPs, interior
            positions or more electrodes than the policy provides.
    """

    if policy.kind is PlacementKind.EXPLICIT:
        if n_electrodes > len(policy.positions):
            raise ElectrodeConfigError(
                f"{n_electrodes} electrodes requested, {len(policy.positions)} positions given"
            )
        if roles is None:
            raise ElectrodeConfigError("explicit placement requires roles")
        labels = [f"E{k}" for k in range(n_electrodes)]
        positions = dict(zip(labels, policy.positions[:n_electrodes]))
    else:
        canonical = canonical_positions(topology, policy.kind)
        if n_electrodes > len(canonical):
            raise ElectrodeConfigError(
                f"{policy.kind.value} provides {len(canonical)} positions, "
                f"{n_electrodes} requested"
            )
        kept = set(_KEEP_ORDER[:n_electrodes])
        labels = [label for label in canonical if label in kept]
        positions = {label: canonical[label] for label in labels}

    resolved = _resolve_roles(labels, roles)
    electrodes = tuple(
        Electrode(label=label, attached_np=topology.index(*positions[label]), role=resolved[label])
        for label in labels
    )
    config = ElectrodeConfig(electrodes=electrodes)
    config.validate_against(topology)
    LOGGER.debug(
        "Placed %d electrodes (%s) on %dx%d grid",
        len(electrodes),
        policy.kind.value,
        topology.rows,
        topology.cols,
    )
    return config


def control_series_layout(topology: NetworkTopology) -> ElectrodeConfig:
    """Full control-count layout: two inputs, nine controls, output in the far corner.

    Controls are ordered from the input side toward the output; symmetric pairs list
    the Input1 (top edge) side first.
    """

    if topology.rows < 5 or topology.cols < 5:
        raise ElectrodeConfigError("control-count layouts need at least a 5x5 grid")
    last_row, last_col = topology.rows - 1, topology.cols - 1
    mid_row, mid_col = _midpoint(topology.rows), _midpoint(topology.cols)
    control_positions: List[Position] = [
        (0, 0),
        (0, last_col - 1),
        (last_row - 1, 0),
        (0, last_col),
        (last_row, 0),
        (mid_row, last_col),
        (last_row, mid_col),
        (last_row - 1, last_col),
        (last_row, last_col - 1),
    ]
    electrodes = [
        Electrode("I1", topology.index(0, mid_col), Role.INPUT1),
        Electrode("I2", topology.index(mid_row, 0), Role.INPUT2),
    ]
    electrodes.extend(
        Electrode(f"C{k + 1}", topology.index(*position), Role.CONTROL)
        for k, position in enumerate(control_positions)
    )
    electrodes.append(Electrode("O", topology.index(last_row, last_col), Role.OUTPUT))
    config = ElectrodeConfig(electrodes=tuple(electrodes))
    config.validate_against(topology)
    return config


def control_series_configs(
    base: ElectrodeConfig, series: ControlSeries | str, n_controls: int
) -> ElectrodeConfig:
    """Keep ``n_controls`` of the base controls.

    Series A keeps the first controls (input side), series B the last ones (output side).
    """

    series = ControlSeries(series)
    controls = base.controls
    if not 0 <= n_controls <= len(controls):
        raise ElectrodeConfigError(
            f"N_C must lie in [0, {len(controls)}], got {n_controls}"
        )
    if series is ControlSeries.A:
        kept = controls[:n_controls]
    else:
        kept = controls[len(controls) - n_controls :]
    kept_labels = {electrode.label for electrode in kept}
    electrodes = tuple(
        electrode
        for electrode in base.electrodes
        if electrode.role is not Role.CONTROL or electrode.label in kept_labels
    )
    return replace(base, electrodes=electrodes)
