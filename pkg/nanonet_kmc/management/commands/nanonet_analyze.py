"""Gate metrics of an existing GateSample CSV."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import pandas as pd

from nanonet_kmc.analysis import (
    DEFAULT_DELTAS,
    DEFAULT_THRESHOLD,
    fitness_frame,
    summarize,
)
from nanonet_kmc.storage import RunStoreError, currents_from_frame, read_gate_samples

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Compute fitness tables and the metrics summary of a gate-sample CSV"
    experiment = "analyze"
    uses_config = False

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        parser.add_argument("input", type=str, help="GateSample CSV written by nanonet_sample_gates.")
        parser.add_argument(
            "--output", type=str, default=None, help="Output directory; defaults to runs."
        )
        parser.add_argument(
            "--delta", type=float, default=0.0, help="Off-current penalty of the fitness table."
        )
        parser.add_argument(
            "--deltas", type=float, nargs="+", default=list(DEFAULT_DELTAS),
            help="Penalty grid of the exceedance curves.",
        )
        parser.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)

    def option_violations(self, options):  # noqa: ANN001
        problems = []
        if options["delta"] < 0:
            problems.append(f"--delta: must be >= 0, got {options['delta']}")
        if any(delta < 0 for delta in options["deltas"]):
            problems.append("--deltas: every penalty must be >= 0")
        if not options["threshold"] > 0:
            problems.append(f"--threshold: must be > 0, got {options['threshold']}")
        return problems

    def identity(self, config, options):  # noqa: ANN001
        path = Path(options["input"])
        try:
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
        except OSError as exc:
            raise RunStoreError(f"cannot read {path}: {exc}") from exc
        return digest, 0

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        frame = read_gate_samples(options["input"])
        currents = currents_from_frame(frame)
        summary = summarize(currents, options["deltas"], options["threshold"])
        self.store.write_table(
            record, "fitness", fitness_frame(frame["sample_id"].tolist(), currents, options["delta"])
        )
        gate_rows = pd.DataFrame(
            [{**vars(stats), "gate": stats.gate.value} for stats in summary.gates.values()]
        )
        self.store.write_table(record, "gate_statistics", gate_rows)
        payload = summary.to_dict()
        self.store.write_text(
            record, "summary.json", json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
        )
        record.metadata.update(
            input=str(options["input"]),
            n_samples=summary.n_samples,
            q_ndr=payload["q_ndr"],
            q_nls=payload["q_nls"],
            undefined=list(summary.undefined),
        )
        self.stdout.write(
            f"Q_NDR = {summary.q_ndr:.3f}, Q_NLS = {summary.q_nls:.3f} over {summary.n_samples} samples"
        )
