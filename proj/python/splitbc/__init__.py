"""Strang splitting with boundary corrections for 1D reaction problems.

Configs are dicts with the same layout as the CLI's JSON files.
"""

import json

from ._splitbc import (
    ConfigError,
    NumericError,
    grid_nodes,
    loglog_slope,
    matrix_exponential,
    observed_order,
    phi_family,
    reaction_names,
)
from . import _splitbc

__all__ = [
    "ConfigError",
    "NumericError",
    "comparison",
    "convergence",
    "grid_nodes",
    "loglog_slope",
    "matrix_exponential",
    "observed_order",
    "phi_family",
    "reaction_names",
    "resonance",
    "run",
    "trace",
]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def convergence(config, window=None):
    """Local and global error tables, keyed by error kind."""
    return json.loads(_splitbc._convergence(_text(config), window))


def comparison(config):
    return json.loads(_splitbc._comparison(_text(config)))


def resonance(config):
    return json.loads(_splitbc._resonance(_text(config)))


def trace(config):
    return json.loads(_splitbc._trace(_text(config)))


def run(command, config, out_dir):
    """Same as the CLI subcommand; returns the files written."""
    return [str(p) for p in _splitbc._run_command(command, _text(config), str(out_dir))]
