"""Shared plumbing of the experiment management commands."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Tuple

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

import nanonet_kmc
from nanonet_kmc.analysis import AnalysisInputError
from nanonet_kmc.electrostatics import CapacitanceDomainError, SingularCapacitanceError
from nanonet_kmc.engine import EventDomainError, FrozenStateError, SimulationParamsError
from nanonet_kmc.experiments import ScalingExtrapolationError, ScalingTableError
from nanonet_kmc.runconfig import RunConfig, RunConfigError, config_hash, emit_config, parse_config
from nanonet_kmc.storage import RunRecord, RunStoreError
from nanonet_kmc.storage.backends.base import get_run_store
from nanonet_kmc.topology import ElectrodeConfigError, TopologyError

class OptionError(ValueError):
    """Raised with every invalid command-line option of a command."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


DOMAIN_ERRORS = (
    OptionError,
    RunConfigError,
    TopologyError,
    ElectrodeConfigError,
    CapacitanceDomainError,
    SingularCapacitanceError,
    EventDomainError,
    SimulationParamsError,
    FrozenStateError,
    ScalingExtrapolationError,
    ScalingTableError,
    RunStoreError,
    AnalysisInputError,
)

ERROR_RETURN_CODE = 2


class ExperimentCommand(BaseCommand):
    """Parse the run config, run ``run_experiment`` and persist a run record.

    Subclasses set ``experiment`` and implement ``run_experiment(config, record, options)``,
    writing their tables through ``self.store``.
    """

    experiment = ""
    uses_config = True

    def add_arguments(self, parser) -> None:  # type: ignore[override]
        parser.add_argument(
            "--config",
            type=str,
            default=None,
            help="Run-config YAML; defaults to NANONET_RUN_CONFIG.",
        )
        parser.add_argument("--seed", type=int, default=None, help="Override master_seed.")
        parser.add_argument("--samples", type=int, default=None, help="Override n_samples.")
        parser.add_argument(
            "--output", type=str, default=None, help="Override the output directory."
        )

    def handle(self, *args, **options):  # noqa: ANN001
        try:
            violations = self.option_violations(options)
            if violations:
                raise OptionError(violations)
            config = self.load_config(options) if self.uses_config else None
            self.store = get_run_store()
            digest, seed = self.identity(config, options)
            output = options.get("output") or (
                config.output.directory if config is not None else "runs"
            )
            record = self.store.open_run(
                experiment=self.experiment,
                config_hash=digest,
                version=nanonet_kmc.__version__,
                master_seed=seed,
                output=output,
            )
            if config is not None:
                self.store.write_text(record, "config.yaml", emit_config(config))
            self.run_experiment(config, record, options)
            sidecar = self.store.finalize(record)
        except DOMAIN_ERRORS as exc:
            self.report_error(exc)
            raise CommandError(str(exc), returncode=ERROR_RETURN_CODE) from exc

        failed = int(record.metadata.get("failed_samples", 0))
        if failed:
            message = f"{failed} samples had failed runs; completed samples written to {sidecar}"
            self.report_error(RuntimeError(message))
            raise CommandError(message, returncode=ERROR_RETURN_CODE)
        self.stdout.write(self.style.SUCCESS(f"{self.experiment} finished; record at {sidecar}"))

    def load_config(self, options: Dict[str, Any]) -> RunConfig:
        path = options.get("config") or getattr(settings, "NANONET_RUN_CONFIG", None)
        if not path:
            raise RunConfigError(["no run config given and NANONET_RUN_CONFIG is unset"])
        config = parse_config(path)
        return config.with_overrides(seed=options.get("seed"), samples=options.get("samples"))

    def option_violations(self, options: Dict[str, Any]) -> List[str]:
        return []

    def identity(self, config: RunConfig | None, options: Dict[str, Any]) -> Tuple[str, int]:
        return config_hash(config), config.sampling.master_seed

    def run_experiment(
        self, config: RunConfig | None, record: RunRecord, options: Dict[str, Any]
    ) -> None:  # pragma: no cover - interface
        raise NotImplementedError

    def report_error(self, exc: Exception) -> None:
        report = {
            "error": type(exc).__name__,
            "message": str(exc),
            "violations": list(getattr(exc, "violations", [])),
        }
        self.stderr.write(json.dumps(report, sort_keys=True))
