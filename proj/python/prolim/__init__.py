"""Exact lim / colim computations over the integers.

Every function takes plain Python data (the same JSON shapes the ``prolim``
command line reads) and returns decoded JSON.
"""

import json

from . import _core
from ._core import BudgetExceeded, set_op_budget

__all__ = [
    "BudgetExceeded",
    "set_op_budget",
    "snf",
    "homology",
    "tower",
    "posetlim",
    "nerve",
    "tau",
    "scenario",
    "verify",
]


def _matrix(rows):
    if isinstance(rows, dict):
        return rows
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows else 0
    return {"rows": len(rows), "cols": cols, "entries": [[str(x) for x in r] for r in rows]}


def _int(x):
    return int(x) if isinstance(x, (int, str)) else x


def snf(matrix):
    """Smith form U A V = D; U, D, V come back as lists of int rows."""
    out = json.loads(_core.snf(json.dumps(_matrix(matrix))))
    out["diagonal"] = [_int(x) for x in out["diagonal"]]
    for key, val in out.items():
        if isinstance(val, dict) and "entries" in val:
            out[key] = [[_int(x) for x in row] for row in val["entries"]]
    return out


def homology(facets, n):
    """H_n and H^n of the complex spanned by ``facets`` (or a complex dict)."""
    cx = facets if isinstance(facets, dict) else {"facets": [list(f) for f in facets]}
    return json.loads(_core.homology(json.dumps(cx), n))


def tower(data, depth=4):
    return json.loads(_core.tower(json.dumps(data), depth))


def posetlim(diagram, pmax=3):
    return json.loads(_core.posetlim(json.dumps(diagram), pmax))


def nerve(cover, max_dim=-1):
    return json.loads(_core.nerve(json.dumps(cover), max_dim))


def tau(bisystem, wa, wb):
    return json.loads(_core.tau(json.dumps(bisystem), wa, wb))


def scenario(name, **params):
    return json.loads(_core.scenario(name, json.dumps(params)))


def verify(tower_of_complexes, n):
    return json.loads(_core.verify(json.dumps(tower_of_complexes), n))
