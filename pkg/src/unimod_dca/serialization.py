"""JSON schemas for matrices, systems, lattice sets, polytopes and
set-function tables.

Integers beyond the 53-bit range are written as decimal strings so they
survive JSON readers that go through doubles; rationals are ``"p/q"``
strings.  :func:`dumps` produces canonical output (sorted keys).
"""

from __future__ import annotations

import json
from pathlib import Path

from .dc_classes import UnimodularSystem
from .errors import ParseError
from .exact_linalg import IntMatrix, rational, rational_str
from .lattice_sets import LatticeSet
from .polytopes import Polytope, hull

SAFE_INT = 2**53


def _int_out(v: int):
    return v if -SAFE_INT < v < SAFE_INT else str(v)


def _int_in(v) -> int:
    if isinstance(v, bool):
        raise ParseError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        s = v.strip()
        if s.lstrip("+-").isdigit():
            return int(s)
    raise ParseError(f"expected an integer, got {v!r}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _require(d, *keys):
    if not isinstance(d, dict):
        raise ParseError("expected a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise ParseError(f"missing keys {missing}")


# matrices ---------------------------------------------------------------


def matrix_to_json(m: IntMatrix) -> dict:
    return {
        "rows": m.n_rows,
        "cols": m.n_cols,
        "entries": [[_int_out(c) for c in r] for r in m.rows],
    }


def matrix_from_json(d: dict) -> IntMatrix:
    _require(d, "entries")
    rows = [[_int_in(c) for c in r] for r in d["entries"]]
    if not rows:
        raise ParseError("matrix has no rows")
    m = IntMatrix(tuple(tuple(r) for r in rows))
    if "rows" in d and d["rows"] != m.n_rows or "cols" in d and d["cols"] != m.n_cols:
        raise ParseError("declared shape does not match entries")
    return m


def system_to_json(s: UnimodularSystem) -> dict:
    return matrix_to_json(s.matrix) | {"name": s.name}


def system_from_json(d: dict, check: bool = True) -> UnimodularSystem:
    return UnimodularSystem(matrix_from_json(d), d.get("name"), check=check)


# lattice sets -----------------------------------------------------------


def lattice_set_to_json(s: LatticeSet) -> dict:
    return {"dim": s.dim, "points": [[_int_out(c) for c in p] for p in s.points]}


def lattice_set_from_json(d: dict) -> LatticeSet:
    _require(d, "dim", "points")
    return LatticeSet(_int_in(d["dim"]), tuple(tuple(_int_in(c) for c in p) for p in d["points"]))


# polytopes --------------------------------------------------------------


def _rat_out(v):
    return rational_str(v)


def polytope_to_json(p: Polytope) -> dict:
    return {
        "dim": p.dim,
        "affine_dim": p.affine_dim,
        "vertices": [[_rat_out(c) for c in v] for v in p.vertices],
        "facets": [
            {"normal": [_int_out(c) for c in a], "offset": _rat_out(b)} for a, b in p.facets
        ],
        "equations": [
            {"normal": [_int_out(c) for c in a], "offset": _rat_out(b)} for a, b in p.equations
        ],
        "incidence": [sorted(s) for s in p.incidence],
    }


def polytope_from_json(d: dict) -> Polytope:
    """Accepts ``{"dim", "vertices"}`` (any extra H-data is recomputed) or a
    lattice set ``{"dim", "points"}``."""
    _require(d, "dim")
    pts = d.get("vertices", d.get("points"))
    if pts is None:
        raise ParseError("expected 'vertices' or 'points'")
    dim = _int_in(d["dim"])
    vs = [tuple(rational(c) for c in v) for v in pts]
    if any(len(v) != dim for v in vs):
        raise ParseError("vertex dimension does not match 'dim'")
    return hull(vs)


# set functions ----------------------------------------------------------


def set_functions_from_json(d: dict) -> tuple[list[int], list[int], int]:
    """``{"n": k, "rho": {"bitmask": value}, "mu": {...}}``"""
    _require(d, "n", "rho", "mu")
    n = _int_in(d["n"])
    tables = []
    for key in ("rho", "mu"):
        raw = d[key]
        if isinstance(raw, list):
            table = [_int_in(v) for v in raw]
        else:
            table = [None] * (1 << n)
            for k, v in raw.items():
                mask = int(k)
                if not 0 <= mask < 1 << n:
                    raise ParseError(f"bitmask {k} out of range for n={n}")
                table[mask] = _int_in(v)
            if None in table:
                raise ParseError(f"{key} does not define every subset")
        tables.append(table)
    return tables[0], tables[1], n


def set_functions_to_json(rho, mu, n: int) -> dict:
    return {
        "n": n,
        "rho": {str(m): rho[m] for m in range(1 << n)},
        "mu": {str(m): mu[m] for m in range(1 << n)},
    }
