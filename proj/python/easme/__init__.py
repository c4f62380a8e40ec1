"""Python bindings for the easme protein evolution engine."""

import json
import os

from ._core import (
    ConfigError,
    PatternError,
    SequenceError,
    best_match_score,
    canonical_pattern,
    charged_fraction,
    consensus_similarity,
    crowding_distance,
    edit_distance,
    gravy,
    isoelectric_point,
    kmer_similarity,
    net_charge,
    non_dominated_sort,
    salt_bridge_score,
    scan,
    translate,
    validate_dna,
    validate_protein,
)
from . import _core


def _dump(value):
    return value if isinstance(value, str) else json.dumps(value)


def check(protein, truncated=False, filter=None):
    """Filter verdict as (accepted, reasons). `filter` is a dict or JSON text."""
    return _core.check(protein, truncated, "" if filter is None else _dump(filter))


def score(protein, objectives):
    """Objective vector for one protein; `objectives` is a list of dicts or JSON text."""
    return _core.score(protein, _dump(objectives))


def normalize_config(config):
    """Validated config with every default filled in."""
    return json.loads(_core.normalize_config(_dump(config)))


def run(config, output_dir=None):
    """Run an evolution and return a dict with history, front and population.

    When output_dir is given the usual run files are written there as well.
    """
    text = _core.run_json(_dump(config), "" if output_dir is None else os.fspath(output_dir))
    return json.loads(text)


__all__ = [name for name in dir() if not name.startswith("_") and name not in ("json", "os")]
