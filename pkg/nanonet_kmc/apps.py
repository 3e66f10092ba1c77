from django.apps import AppConfig


class NanonetConfig(AppConfig):
    name = "nanonet_kmc"
    verbose_name = "Nanoparticle Network KMC"

    def ready(self) -> None:
        """Register system checks for the NANONET_* settings."""

        # Lazily import so the checks module can read settings safely.
        from . import checks  # noqa: F401  # pylint: disable=unused-import
