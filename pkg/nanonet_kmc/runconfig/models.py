"""Typed run configuration mirroring the YAML sections."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

from ..electrostatics import DEFAULT_N_TERMS, Permittivities
from ..engine import SimulationParams
from ..topology import (
    ElectrodeConfig,
    NanoparticleSpec,
    NetworkTopology,
    PlacementKind,
    PlacementPolicy,
    Role,
    build_grid,
    place_electrodes,
)

REQUIRED = {"required": True}

REFERENCE_N_NP = 49


@dataclass(frozen=True)
class NetworkSection:
    rows: int = field(metadata=REQUIRED)
    cols: int = field(metadata=REQUIRED)
    radius_nm: float = field(metadata=REQUIRED)
    spacing_nm: float = field(metadata=REQUIRED)


@dataclass(frozen=True)
class ElectrostaticsSection:
    eps_m: float = field(metadata=REQUIRED)
    eps_sio2: float = field(metadata=REQUIRED)
    n_terms: int = DEFAULT_N_TERMS


@dataclass(frozen=True)
class ElectrodesSection:
    """``positions`` are (row, col) pairs for the explicit policy; ``roles`` maps labels to roles."""

    policy: str = PlacementKind.SETUP_A.value
    n_electrodes: int = 8
    positions: Tuple[Tuple[int, int], ...] = ()
    roles: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class SimulationSection:
    temperature_k: float = field(metadata=REQUIRED)
    resistance_ohm: float = field(metadata=REQUIRED)
    equilibration_events: int = 10_000
    u_threshold: float = 0.05
    max_events: int = 10_000_000
    block_events: int = 5_000
    min_blocks: int = 10


@dataclass(frozen=True)
class VoltagesSection:
    """Voltage ranges in mV; ``scaling`` maps N_NP to the range multiplier."""

    input_high_mv: float = 10.0
    control_range_mv: float = 50.0
    u_ref_mv: float = 20.0
    iv_grid_mv: Tuple[float, ...] = tuple(float(u) for u in range(0, 62, 2))
    clamp_scaling: bool = True
    scaling: Dict[int, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SamplingSection:
    n_samples: int = 500
    master_seed: int = 0


@dataclass(frozen=True)
class OutputSection:
    directory: str = "runs"


@dataclass(frozen=True)
class RunConfig:
    network: NetworkSection
    electrostatics: ElectrostaticsSection
    simulation: SimulationSection
    electrodes: ElectrodesSection = field(default_factory=ElectrodesSection)
    voltages: VoltagesSection = field(default_factory=VoltagesSection)
    sampling: SamplingSection = field(default_factory=SamplingSection)
    output: OutputSection = field(default_factory=OutputSection)

    @property
    def n_np(self) -> int:
        return self.network.rows * self.network.cols

    def np_spec(self) -> NanoparticleSpec:
        return NanoparticleSpec(radius=self.network.radius_nm, spacing=self.network.spacing_nm)

    def topology(self) -> NetworkTopology:
        return build_grid(self.network.rows, self.network.cols, self.np_spec())

    def placement(self) -> PlacementPolicy:
        kind = PlacementKind(self.electrodes.policy)
        if kind is PlacementKind.EXPLICIT:
            return PlacementPolicy.explicit(self.electrodes.positions)
        return PlacementPolicy(kind=kind)

    def electrode_config(self, topology: NetworkTopology | None = None) -> ElectrodeConfig:
        topology = topology or self.topology()
        roles = {label: Role(role) for label, role in self.electrodes.roles.items()} or None
        return place_electrodes(topology, self.placement(), self.electrodes.n_electrodes, roles)

    def permittivities(self) -> Permittivities:
        return Permittivities(
            eps_m=self.electrostatics.eps_m, eps_sio2=self.electrostatics.eps_sio2
        )

    def simulation_params(self, temperature: float | None = None) -> SimulationParams:
        section = self.simulation
        return SimulationParams(
            temperature=section.temperature_k if temperature is None else temperature,
            resistance=section.resistance_ohm,
            equilibration_events=section.equilibration_events,
            u_threshold=section.u_threshold,
            max_events=section.max_events,
            block_events=section.block_events,
            min_blocks=section.min_blocks,
        )

    def with_grid(self, rows: int, cols: int) -> "RunConfig":
        return replace(self, network=replace(self.network, rows=rows, cols=cols))

    def with_policy(self, policy: PlacementKind | str) -> "RunConfig":
        return replace(
            self, electrodes=replace(self.electrodes, policy=PlacementKind(policy).value)
        )

    def with_overrides(
        self, *, seed: int | None = None, samples: int | None = None, output: str | None = None
    ) -> "RunConfig":
        sampling = self.sampling
        if seed is not None:
            sampling = replace(sampling, master_seed=seed)
        if samples is not None:
            sampling = replace(sampling, n_samples=samples)
        config = replace(self, sampling=sampling)
        if output is not None:
            config = replace(config, output=OutputSection(directory=output))
        return config
