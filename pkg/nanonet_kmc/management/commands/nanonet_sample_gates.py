"""Sample the Boolean-gate phase space of the configured network."""

from __future__ import annotations

from nanonet_kmc.experiments import sample_gate_phase_space
from nanonet_kmc.storage import gate_samples_frame

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Draw random control voltages and measure the four input combinations for each"
    experiment = "sample_gates"

    def run_experiment(self, config, record, options) -> None:  # noqa: ANN001
        sample_set = sample_gate_phase_space(config)
        self.store.write_table(record, "gate_samples", gate_samples_frame(sample_set))
        record.metadata.update(sample_set.metadata())
        self.stdout.write(f"Wrote {len(sample_set.samples)} gate samples")
