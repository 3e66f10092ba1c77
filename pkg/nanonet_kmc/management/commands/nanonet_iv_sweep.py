"""Current-voltage sweep of one input electrode."""

from __future__ import annotations

import pandas as pd

from nanonet_kmc.experiments import iv_temperature_series

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Measure the output current against one electrode voltage, others grounded"
    experiment = "iv_sweep"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument("--electrode", type=str, default="E1", help="Driven electrode label.")
        parser.add_argument(
            "--temperatures",
            type=float,
            nargs="+",
            default=None,
            help="Temperatures in K; defaults to the configured temperature.",
        )

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        temperatures = options.get("temperatures") or [config.simulation.temperature_k]
        curves = iv_temperature_series(config, options["electrode"], temperatures)
        frames = []
        for curve in curves:
            frame = curve.to_frame()
            frame.insert(0, "temperature_k", curve.temperature)
            frames.append(frame)
        self.store.write_table(record, "iv", pd.concat(frames, ignore_index=True))
        record.metadata.update(
            electrode=options["electrode"],
            temperatures_k=list(temperatures),
            grid_mv=list(config.voltages.iv_grid_mv),
            not_converged=sum(
                1 for curve in curves for t in curve.terminations if t != "uncertainty_reached"
            ),
        )
