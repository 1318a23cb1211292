"""Golden master comparison of abstract GUI states."""

import json

from . import _core
from ._core import (
    ConfigError,
    Error,
    ParseError,
    RuleParseError,
    SnapshotParseError,
    SuiteLocked,
    WellFormednessViolation,
    __version__,
    canonical,
    construct_ags,
    jaro,
    jaro_winkler,
    run_cli,
)

__all__ = [
    "ConfigError",
    "Error",
    "ParseError",
    "RuleParseError",
    "SnapshotParseError",
    "SuiteLocked",
    "WellFormednessViolation",
    "bench",
    "canonical",
    "checkpoint",
    "construct_ags",
    "execute",
    "groups",
    "identify",
    "jaro",
    "jaro_winkler",
    "run_cli",
]


def _text(state):
    return state if isinstance(state, str) else json.dumps(state)


def execute(expected, actual, rules="", strategy="matching", **keys):
    """Compare two states (AGS or snapshot documents, as text or dicts)."""
    return json.loads(_core.execute(_text(expected), _text(actual), rules, strategy, **keys))


def identify(expected, actual, strategy="matching", **keys):
    return _core.identify(_text(expected), _text(actual), strategy, **keys)


def checkpoint(suite, test, step, state):
    return json.loads(_core.checkpoint(str(suite), test, step, _text(state)))


def groups(suite):
    return json.loads(_core.groups(str(suite)))


def bench(pages=2, sizes=(200,), strategies=("strong-weak", "key-tests", "matching"), repetitions=1, seed=1):
    return json.loads(_core.bench(pages, list(sizes), list(strategies), repetitions, seed))
