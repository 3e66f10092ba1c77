"""Gate sampling across grid sizes under Setup A or Setup B."""

from __future__ import annotations

import pandas as pd

from nanonet_kmc.analysis import jsonable
from nanonet_kmc.experiments import (
    DEFAULT_SIDES,
    prediction_tracking,
    series_frame,
    size_series,
    summarize_series,
)
from nanonet_kmc.storage import gate_samples_frame
from nanonet_kmc.topology import PlacementKind

from ._base import ExperimentCommand

SETUPS = {"A": PlacementKind.SETUP_A, "B": PlacementKind.SETUP_B}


class Command(ExperimentCommand):
    help = "Sample gates on side x side grids with Setup A or Setup B electrode placement"
    experiment = "size_series"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument("--setup", choices=sorted(SETUPS), default="A")
        parser.add_argument(
            "--sides", type=int, nargs="+", default=list(DEFAULT_SIDES), help="Grid side lengths."
        )

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        sample_sets, scaling = size_series(config, SETUPS[options["setup"]], options["sides"])
        for side, sample_set in sample_sets.items():
            self.store.write_table(record, f"samples_{side}x{side}", gate_samples_frame(sample_set))
        summaries = summarize_series(sample_sets)
        frame = series_frame(summaries)
        frame.insert(0, "setup", options["setup"])
        self.store.write_table(record, "series", frame)
        self.store.write_table(
            record,
            "scaling",
            pd.DataFrame(
                {"n_np": list(scaling.factors), "scale": list(scaling.factors.values())}
            ).sort_values("n_np", ignore_index=True),
        )
        record.metadata.update(
            setup=options["setup"],
            entries={str(side): s.metadata() for side, s in sample_sets.items()},
            scale_factors={str(n): s for n, s in sorted(scaling.factors.items())},
            prediction_tracking=jsonable(prediction_tracking(summaries)),
            failed_samples=sum(s.n_failed for s in sample_sets.values()),
        )
