"""Python access to the chordext library.

Structured arguments and results are plain dicts and lists in the same JSON
encoding the command line tool uses.
"""

import json

from . import _core
from ._core import (
    CapExceeded,
    ChordextError,
    CliqueNotPsd,
    InvalidArgument,
    MissingValue,
    NotChordal,
    NotPsd,
    NumericalError,
    WindowTooSmall,
)

__all__ = [
    "CapExceeded", "ChordextError", "CliqueNotPsd", "InvalidArgument", "MissingValue",
    "NotChordal", "NotPsd", "NumericalError", "WindowTooSmall",
    "run_cli", "is_chordal", "chordal_check", "chordal_complete", "extension_report",
    "certify_z2", "certify_cross", "polygon_cycle", "caratheodory_fejer",
]


def run_cli(*args):
    """Returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])


def is_chordal(n, edges):
    return json.loads(_core.is_chordal(json.dumps({"n": n, "edges": [list(e) for e in edges]})))


def chordal_check(group, symmetric_set, radius):
    return json.loads(_core.chordal_check(json.dumps(group), json.dumps(symmetric_set), radius))


def chordal_complete(partial, tol=1e-9):
    return json.loads(_core.chordal_complete(json.dumps(partial), tol))


def extension_report(data, radii, folner_sizes=(2, 4, 8), seed=0):
    return json.loads(_core.extension_report(json.dumps(data), list(radii), list(folner_sizes), seed))


def certify_z2():
    return json.loads(_core.certify_z2())


def certify_cross(u1, u2):
    return json.loads(_core.certify_cross(json.dumps(u1), json.dumps(u2)))


def polygon_cycle(elements, steps=None):
    return json.loads(_core.polygon_cycle(json.dumps([list(x) for x in elements]), steps))


def caratheodory_fejer(moments, tol=1e-9):
    """Atoms (weight, frequency) with sum w exp(i k f) = c_k."""
    return _core.caratheodory_fejer([complex(c) for c in moments], tol)
