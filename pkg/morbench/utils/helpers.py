"""Utility functions for morbench."""

import os
from pathlib import Path


def ensure_dir(path: Path) -> Path:
    """Ensure a directory exists, creating it if necessary."""
    path.mkdir(parents=True, exist_ok=True)
    return path


def expand_path(path: str | Path) -> Path:
    """Expand environment variables and user home in a path."""
    return Path(os.path.expandvars(str(path))).expanduser()


def get_morbench_home_path() -> Path:
    """Get the morbench data root, overridable with MORBENCH_HOME."""
    configured = os.getenv("MORBENCH_HOME")
    if configured:
        return expand_path(configured)
    return Path.home() / ".morbench"


def format_float(value: float) -> str:
    """Format a float with full round-trip precision, stable across runs."""
    return repr(float(value))
