"""Run one equilibrate + measure simulation of the configured network."""

from __future__ import annotations

from pathlib import Path

import pandas as pd
from django.conf import settings

from nanonet_kmc.electrostatics import dump_capacitance_csv
from nanonet_kmc.experiments import simulate_configuration

from ._base import ExperimentCommand

BITS = {"00": (0, 0), "10": (1, 0), "01": (0, 1), "11": (1, 1)}


class Command(ExperimentCommand):
    help = "Simulate the configured network once at one input combination"
    experiment = "simulate"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument(
            "--bits", choices=sorted(BITS), default="11", help="Input combination (in1, in2)."
        )
        parser.add_argument(
            "--trace",
            action="store_true",
            help="Dump every measured event to trace.csv and the matrix to capacitance.csv.",
        )

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        trace = bool(options.get("trace")) or getattr(settings, "NANONET_TRACE_EVENTS", False)
        run = simulate_configuration(config, BITS[options["bits"]], trace=trace)
        estimate = run.estimate
        self.store.write_table(
            record,
            "voltages",
            pd.DataFrame({"electrode": run.electrode_labels, "u_mv": run.voltages_mv}),
        )
        self.store.write_table(
            record,
            "estimate",
            pd.DataFrame(
                [
                    {
                        "current": estimate.current,
                        "uncertainty": estimate.uncertainty,
                        "termination": estimate.termination.value,
                        "events": estimate.events,
                        "time": estimate.time,
                        "blocks": len(estimate.blocks),
                    }
                ]
            ),
        )
        if run.trace is not None:
            self.store.write_table(record, "trace", run.trace)
            dump_capacitance_csv(run.model, Path(record.directory) / "capacitance.csv")
            record.files["capacitance"] = "capacitance.csv"
        record.metadata.update(
            seed=run.seed,
            bits=options["bits"],
            termination=estimate.termination.value,
            events=estimate.events,
            n_np=config.n_np,
        )
        self.stdout.write(
            f"I = {estimate.current:.4e} A (u = {estimate.uncertainty:.3g}, "
            f"{estimate.termination.value})"
        )
