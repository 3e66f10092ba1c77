"""Gate statistics for every pair of input electrode positions."""

from __future__ import annotations

from nanonet_kmc.experiments import input_position_scan
from nanonet_kmc.storage import gate_samples_frame

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Scan input electrode pairs and map electrode-voltage correlations with the output"
    experiment = "position_scan"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument(
            "--delta", type=float, default=10.0, help="Logic-high input level in mV."
        )

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        scan = input_position_scan(config, delta_mv=options["delta"])
        for (first, second), sample_set in scan.sample_sets.items():
            self.store.write_table(
                record, f"samples_{first}_{second}", gate_samples_frame(sample_set)
            )
        self.store.write_table(record, "pairs", scan.to_frame())
        self.store.write_table(record, "correlation_map", scan.correlation_frame())
        record.metadata.update(
            delta_mv=scan.delta_mv,
            electrodes=list(scan.labels),
            pairs=[list(pair) for pair in scan.pairs],
            entries={f"{a}_{b}": s.metadata() for (a, b), s in scan.sample_sets.items()},
            failed_samples=sum(s.n_failed for s in scan.sample_sets.values()),
        )
