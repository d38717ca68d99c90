"""Reproduce the small worked examples and compare with stored fixtures."""

from __future__ import annotations

import json
from importlib import resources

from .dc_classes import UnimodularSystem, system_b4, system_mnat
from .decompose import integral_decompose
from .errors import DCAError, FixtureMismatch, NotUnimodular
from .exact_linalg import IntMatrix, is_totally_unimodular, is_unimodular
from .lattice_sets import (
    LatticeSet,
    holes,
    is_lnat_convex,
    lnat_violation,
    minkowski_sum,
    sum_no_hole_check,
)
from .polytopes import hull, lattice_points


def load_fixture() -> dict:
    text = resources.files("unimod_dca.fixtures").joinpath("worked_examples.json").read_text()
    return json.loads(text)


def _pts(s: LatticeSet) -> list:
    return [list(p) for p in s.points]


def reproduce() -> dict:
    """Recompute every fixture entry from scratch."""
    fx = load_fixture()
    out = {}

    e = fx["diagonal_segments"]
    s1, s2 = LatticeSet.of(e["s1"]), LatticeSet.of(e["s2"])
    total = minkowski_sum(s1, s2)
    out["diagonal_segments"] = {
        "s1": _pts(s1),
        "s2": _pts(s2),
        "sum": _pts(total),
        "hull_lattice_points": _pts(lattice_points(hull(total.points))),
        "holes": _pts(holes(total)),
        "sum_no_hole": sum_no_hole_check(s1, s2),
    }

    e = fx["staircase_3d"]
    s1, s2 = LatticeSet.of(e["s1"]), LatticeSet.of(e["s2"])
    total = minkowski_sum(s1, s2)
    x, y, up, down = lnat_violation(total)
    out["staircase_3d"] = {
        "s1": _pts(s1),
        "s2": _pts(s2),
        "sum": _pts(total),
        "sum_size": len(total),
        "sum_no_hole": sum_no_hole_check(s1, s2),
        "sum_lnat": is_lnat_convex(total),
        "lnat_witness": {"x": list(x), "y": list(y), "ceil": list(up), "floor": list(down)},
        "s1_lnat": is_lnat_convex(s1),
        "s2_lnat": is_lnat_convex(s2),
    }

    am = system_mnat(4).matrix
    b = system_b4().matrix
    out["mnat4_matrix"] = am.tolist()
    out["b4_matrix"] = b.tolist()
    out["unimodular"] = {
        "mnat4": is_unimodular(am),
        "b4": is_unimodular(b),
        "mnat4_difference_block_tu": is_totally_unimodular(am.select_columns(range(4, am.n_cols))),
    }

    e = fx["negative_control"]
    m = IntMatrix.from_rows(e["system"])
    try:
        UnimodularSystem(m)
        rejected = False
    except NotUnimodular:
        rejected = True
    forced = UnimodularSystem(m, "skew", check=False)
    try:
        integral_decompose(forced, hull(e["p1"]), hull(e["p2"]), e["z"])
        error = None
    except DCAError as exc:
        error = type(exc).__name__
    out["negative_control"] = {
        "system": m.tolist(),
        "p1": e["p1"],
        "p2": e["p2"],
        "z": e["z"],
        "rejected_at_construction": rejected,
        "error": error,
    }
    return out


def compare(report: dict, fixture: dict | None = None) -> list[str]:
    """Dotted paths where ``report`` and the fixture differ."""
    fixture = fixture if fixture is not None else load_fixture()
    diffs = []

    def walk(a, b, path):
        if isinstance(b, dict) and isinstance(a, dict):
            for k in sorted(set(a) | set(b)):
                walk(a.get(k), b.get(k), f"{path}.{k}" if path else k)
        elif a != b or type(a) is not type(b):
            diffs.append(path)

    walk(report, fixture, "")
    return diffs


def check() -> dict:
    report = reproduce()
    diffs = compare(report)
    if diffs:
        raise FixtureMismatch(f"mismatching entries: {diffs}")
    return report
