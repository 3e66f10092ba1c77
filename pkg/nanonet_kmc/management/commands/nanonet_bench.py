"""Time the per-event costs of the simulator across network sizes."""

from __future__ import annotations

from nanonet_kmc.analysis import jsonable
from nanonet_kmc.experiments import bench
from nanonet_kmc.experiments.bench import DEFAULT_BENCH_SIDES

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Measure rate recomputation and event selection time per event"
    experiment = "bench"

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        super().add_arguments(parser)
        parser.add_argument(
            "--sides", type=int, nargs="+", default=list(DEFAULT_BENCH_SIDES)
        )
        parser.add_argument("--steps", type=int, default=2_000, help="Timed events per size.")

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        frame, slopes = bench(config, options["sides"], options["steps"])
        self.store.write_table(record, "bench", frame)
        record.metadata.update(slopes=jsonable(slopes), steps=options["steps"])
        for row in frame.itertuples(index=False):
            self.stdout.write(
                f"N_NP={row.n_np:4d} events={row.n_events:5d} "
                f"rates={row.rate_time_s:.3e} s select={row.select_time_s:.3e} s"
            )
        self.stdout.write(
            f"log-log slopes: rates {slopes['rate_slope']:.2f}, "
            f"selection {slopes['select_slope']:.2f}"
        )
