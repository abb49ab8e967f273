"""Exact characters of compact Lie groups at regular and singular torus points."""

import json as _json

from ._core import Group, WeylcharError, delta_opt, km_moment
from ._core import run as _run

__all__ = ["Group", "WeylcharError", "delta_opt", "km_moment", "run"]


def run(config, threads=1):
    """Run a CLI config (dict or JSON string); returns (exit_code, document)."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run(config, threads)
