"""Derive the size-dependent voltage scale factors."""

from __future__ import annotations

from dataclasses import replace

import pandas as pd

from nanonet_kmc.experiments import DEFAULT_SIDES, derive_voltage_scaling
from nanonet_kmc.runconfig import emit_config

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Derive voltage scale factors that keep the 7x7 reference current across sizes"
    experiment = "scaling"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument(
            "--sides", type=int, nargs="+", default=list(DEFAULT_SIDES), help="Grid side lengths."
        )
        parser.add_argument(
            "--u-ref", type=float, default=None, help="Reference voltage in mV."
        )

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        table = derive_voltage_scaling(config, options["sides"], u_ref_mv=options.get("u_ref"))
        rows = [
            {
                "n_np": n_np,
                "scale": factor,
                "clamped": table.clamped.get(n_np, False),
            }
            for n_np, factor in sorted(table.factors.items())
        ]
        self.store.write_table(record, "scaling", pd.DataFrame(rows))
        scaled = replace(config, voltages=replace(config.voltages, scaling=dict(table.factors)))
        self.store.write_text(record, "scaled_config.yaml", emit_config(scaled))
        record.metadata.update(
            u_ref_mv=table.u_ref_mv,
            scale_factors={str(n): s for n, s in sorted(table.factors.items())},
            clamped=[n for n, flag in table.clamped.items() if flag],
        )
        for row in rows:
            self.stdout.write(f"N_NP={row['n_np']}: s = {row['scale']:.4f}")
