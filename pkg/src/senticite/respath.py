"""Locate bundled resource files, honoring the SENTICITE_RESOURCES override."""

from __future__ import annotations

import os
from importlib.resources import files
from pathlib import Path

ENV_VAR = "SENTICITE_RESOURCES"


def resource_path(name: str, directory: str | Path | None = None) -> Path:
    """Resolve a resource file.

    Precedence: explicit directory, then a file of that name under
    $SENTICITE_RESOURCES, then the bundled copy.
    """
    if directory is not None:
        return Path(directory) / name
    env = os.environ.get(ENV_VAR)
    if env:
        candidate = Path(env) / name
        if candidate.exists():
            return candidate
    return Path(str(files("senticite").joinpath("resources", name)))


def data_path(name: str) -> Path:
    """Bundled example data shipped with the package."""
    return Path(str(files("senticite").joinpath("data", name)))
