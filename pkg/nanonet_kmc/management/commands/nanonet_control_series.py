"""Gate sampling over the number of control electrodes."""

from __future__ import annotations

from nanonet_kmc.analysis import jsonable
from nanonet_kmc.experiments import (
    DEFAULT_CONTROL_COUNTS,
    control_count_series,
    prediction_tracking,
    series_frame,
    summarize_series,
)
from nanonet_kmc.storage import gate_samples_frame
from nanonet_kmc.topology import ControlSeries

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Sample gates with N_C controls kept from the input side (A) or output side (B)"
    experiment = "control_series"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument(
            "--series", choices=[s.value for s in ControlSeries], default=ControlSeries.A.value
        )
        parser.add_argument(
            "--counts",
            type=int,
            nargs="+",
            default=list(DEFAULT_CONTROL_COUNTS),
            help="Control counts N_C to run.",
        )

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        sample_sets = control_count_series(config, options["series"], options["counts"])
        for n_controls, sample_set in sample_sets.items():
            self.store.write_table(record, f"samples_nc{n_controls}", gate_samples_frame(sample_set))
        summaries = summarize_series(sample_sets)
        frame = series_frame(summaries)
        frame.insert(0, "series", options["series"])
        self.store.write_table(record, "series", frame)
        record.metadata.update(
            series=options["series"],
            entries={str(n): s.metadata() for n, s in sample_sets.items()},
            prediction_tracking=jsonable(prediction_tracking(summaries)),
            failed_samples=sum(s.n_failed for s in sample_sets.values()),
        )
