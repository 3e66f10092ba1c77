"""Size-dependent voltage scale factors matching the output current of the 7x7 network."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence

import numpy as np

from ..runconfig import REFERENCE_N_NP, RunConfig
from .iv import IVCurve, sweep_electrodes
from .runner import Stream

LOGGER = logging.getLogger(__name__)

REFERENCE_SIDE = 7


class ScalingExtrapolationError(ValueError):
    """Raised when the reference current lies outside a measured curve and clamping is off."""


class ScalingTableError(ValueError):
    """Raised when a scale factor is requested for a size the table does not cover."""


@dataclass(frozen=True)
class ScalingTable:
    factors: Dict[int, float] = field(default_factory=lambda: {REFERENCE_N_NP: 1.0})
    u_ref_mv: float = 20.0
    clamped: Dict[int, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.factors.get(REFERENCE_N_NP, 1.0) != 1.0:
            raise ScalingTableError(f"reference size {REFERENCE_N_NP} must have s = 1")
        for n_np, factor in self.factors.items():
            if not factor > 0:
                raise ScalingTableError(f"scale factor for N_NP={n_np} must be > 0, got {factor}")

    @classmethod
    def from_config(cls, config: RunConfig) -> "ScalingTable":
        factors = {REFERENCE_N_NP: 1.0, **config.voltages.scaling}
        return cls(factors=factors, u_ref_mv=config.voltages.u_ref_mv)

    def covers(self, n_np: int) -> bool:
        return n_np in self.factors

    def factor(self, n_np: int) -> float:
        try:
            return self.factors[n_np]
        except KeyError as exc:
            raise ScalingTableError(f"no scale factor for N_NP={n_np}") from exc

    def merged(self, other: "ScalingTable") -> "ScalingTable":
        return ScalingTable(
            factors={**self.factors, **other.factors},
            u_ref_mv=self.u_ref_mv,
            clamped={**self.clamped, **other.clamped},
        )


def _increasing_prefix(voltages: np.ndarray, currents: np.ndarray):
    """Points of the leading non-decreasing run that raise the running maximum."""

    stop = len(currents)
    for k in range(1, len(currents)):
        if currents[k] < currents[k - 1]:
            stop = k
            break
    u, i = voltages[:stop], currents[:stop]
    keep = np.concatenate(([True], i[1:] > np.maximum.accumulate(i)[:-1]))
    return u[keep], i[keep]


def scale_from_curves(
    reference: IVCurve, curve: IVCurve, u_ref_mv: float, clamp: bool = True
) -> tuple[float, bool]:
    """Solve ``I_curve(s * u_ref) = I_reference(u_ref)`` by linear interpolation.

    Returns:
        ``(s, clamped)``; ``clamped`` is set when the target current was outside the
        increasing part of ``curve`` and the nearest end point was used.

    Raises:
        ScalingExtrapolationError: When the target is not bracketed and ``clamp`` is off.
    """

    target = reference.current_at(u_ref_mv)
    voltages, currents = _increasing_prefix(
        np.asarray(curve.voltages_mv, dtype=float), np.asarray(curve.currents, dtype=float)
    )
    clamped = not currents[0] <= target <= currents[-1]
    if clamped and not clamp:
        raise ScalingExtrapolationError(
            f"reference current {target:.4e} A outside [{currents[0]:.4e}, {currents[-1]:.4e}] A "
            f"for curve {curve.label}"
        )
    u_star = float(np.interp(target, currents, voltages))
    return u_star / u_ref_mv, clamped


def derive_voltage_scaling(
    config: RunConfig,
    sides: Sequence[int],
    u_ref_mv: float | None = None,
    grid_mv: Sequence[float] | None = None,
) -> ScalingTable:
    """Scale factors for ``side x side`` networks relative to the 7x7 reference.

    Each size is swept with both inputs at the same voltage and every other electrode
    grounded, using the configured placement policy.
    """

    u_ref = config.voltages.u_ref_mv if u_ref_mv is None else u_ref_mv
    grid = config.voltages.iv_grid_mv if grid_mv is None else tuple(grid_mv)
    clamp = config.voltages.clamp_scaling

    def measure(side: int) -> IVCurve:
        sized = config.with_grid(side, side)
        electrodes = sized.electrode_config()
        labels = [electrodes.labels[k] for k in electrodes.input_indices]
        return sweep_electrodes(sized, electrodes, labels, grid, key=(Stream.SCALING, side))

    reference = measure(REFERENCE_SIDE)
    factors: Dict[int, float] = {REFERENCE_N_NP: 1.0}
    clamped: Dict[int, bool] = {}
    for side in sides:
        n_np = side * side
        if n_np == REFERENCE_N_NP:
            continue
        factor, was_clamped = scale_from_curves(reference, measure(side), u_ref, clamp)
        if was_clamped:
            LOGGER.warning(
                "Scale factor for %dx%d clamped to the measured grid (s = %.3f)", side, side, factor
            )
        if not factor > 0:
            raise ScalingExtrapolationError(
                f"non-positive scale factor {factor:.3g} for {side}x{side}; extend the I-V grid"
            )
        factors[n_np] = factor
        clamped[n_np] = was_clamped
        LOGGER.info("Scale factor for %dx%d: s = %.3f", side, side, factor)
    return ScalingTable(factors=factors, u_ref_mv=u_ref, clamped=clamped)


def resolve_scaling(config: RunConfig, sides: Sequence[int]) -> ScalingTable:
    """Configured factors, with the missing sizes derived by I-V sweeps."""

    table = ScalingTable.from_config(config)
    missing = [side for side in sides if not table.covers(side * side)]
    if not missing:
        return table
    LOGGER.info("Deriving voltage scaling for sizes %s", ", ".join(f"{s}x{s}" for s in missing))
    return table.merged(derive_voltage_scaling(config, missing))


def scaling_rows(table: ScalingTable) -> Mapping[int, Mapping[str, object]]:
    return {
        n_np: {"scale": factor, "clamped": table.clamped.get(n_np, False)}
        for n_np, factor in sorted(table.factors.items())
    }
