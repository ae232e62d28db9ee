"""Utility functions for morbench."""

from morbench.utils.helpers import ensure_dir, expand_path, format_float, get_morbench_home_path

__all__ = ["ensure_dir", "expand_path", "format_float", "get_morbench_home_path"]
