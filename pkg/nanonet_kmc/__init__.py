"""nanonet_kmc reusable application."""

from importlib import metadata

try:
    __version__ = metadata.version("nanonet_kmc")
except metadata.PackageNotFoundError:  # pragma: no cover
    __version__ = "0.1.0"

default_app_config = "nanonet_kmc.apps.NanonetConfig"

__all__ = ["__version__", "default_app_config"]
