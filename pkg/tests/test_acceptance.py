"""Acceptance criteria, one test each.

Every test records a single ``[PASS]``/``[FAIL]`` line and then asserts.
The lines are printed as they happen when output capture is off (``-s``)
and are always repeated in the terminal summary.
"""

import sys
import time

import pytest

from unimod_dca.dc_classes import UnimodularSystem, system_b4, system_mnat
from unimod_dca.decompose import integral_decompose
from unimod_dca.errors import IntegralityFailure, NotUnimodular
from unimod_dca.exact_linalg import IntMatrix, is_unimodular
from unimod_dca.harness import (
    HarnessConfig,
    run_hull_sum_oracle,
    run_mnat_sum_closure,
    run_transform_equivalence,
    run_verify,
)
from unimod_dca.lattice_sets import (
    LatticeSet,
    is_lnat_convex,
    lnat_violation,
    minkowski_sum,
    sum_no_hole_check,
)
from unimod_dca.polytopes import hull, lattice_points

SEED = 20261016
DCP2_DIMS = (2, 3, 4)
DCP2_TRIALS = 200
B4_TRIALS = 100

_runs = {}
LINES = []


def emit(number, ok, detail, elapsed, limit):
    timing = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}; {timing}"
    LINES.append(line)
    print(line)
    return ok


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def dcp2_runs():
    """The random closure/decomposition runs shared by criteria 4, 5 and 8."""
    if not _runs:
        for gen in ("zonotope", "gpolymatroid"):
            for dim in DCP2_DIMS:
                cfg = HarnessConfig(seed=SEED, trials=DCP2_TRIALS, dim=dim, generator=gen)
                _runs[("mnat", gen, dim)] = timed(lambda: run_verify(cfg))
        cfg = HarnessConfig(seed=SEED, trials=B4_TRIALS, dim=4, system=system_b4())
        _runs[("b4", "zonotope", 4)] = timed(lambda: run_verify(cfg))
    return _runs


def test_criterion_01_two_point_segments():
    def go():
        s1, s2 = LatticeSet.of([(0, 0), (1, 1)]), LatticeSet.of([(1, 0), (0, 1)])
        total = minkowski_sum(s1, s2)
        return total, lattice_points(hull(total.points)), sum_no_hole_check(s1, s2)

    (total, filled, no_hole), dt = timed(go)
    ok = (
        set(total.points) == {(1, 0), (0, 1), (2, 1), (1, 2)}
        and (1, 1) in filled
        and set(filled.points) - set(total.points) == {(1, 1)}
        and no_hole is False
        and dt < 1
    )
    detail = f"sum={list(total.points)} hole={sorted(set(filled.points) - set(total.points))} no_hole={no_hole}"
    assert emit(1, ok, detail, dt, 1)


def test_criterion_02_lnat_sum_fails_midpoints():
    def go():
        s1 = LatticeSet.of([(0, 0, 0), (1, 1, 0)])
        s2 = LatticeSet.of([(0, 0, 0), (0, 1, 1)])
        total = minkowski_sum(s1, s2)
        return (total, sum_no_hole_check(s1, s2), is_lnat_convex(total), lnat_violation(total),
                is_lnat_convex(s1), is_lnat_convex(s2))

    (total, no_hole, lnat, witness, l1, l2), dt = timed(go)
    ok = (
        set(total.points) == {(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 2, 1)}
        and no_hole is True
        and lnat is False
        and witness[2:] == ((1, 1, 1), (0, 1, 0))
        and l1 and l2
        and dt < 1
    )
    detail = f"no_hole={no_hole} lnat={lnat} midpoints={witness[2]},{witness[3]} summands_lnat={l1 and l2}"
    assert emit(2, ok, detail, dt, 1)


def test_criterion_03_unimodular_matrices():
    def go():
        mnat = [is_unimodular(system_mnat(n).matrix) for n in range(1, 6)]
        return mnat, is_unimodular(system_b4().matrix), is_unimodular(IntMatrix.from_rows([[1, 1], [1, -1]]))

    (mnat, b4, skew), dt = timed(go)
    ok = all(mnat) and b4 and not skew and dt < 10
    assert emit(3, ok, f"mnat n=1..5 {mnat} b4={b4} skew={skew}", dt, 10)


def test_criterion_04_mnat_closure_suite():
    runs = dcp2_runs()
    keys = [k for k in runs if k[0] == "mnat"]
    failures = sum(runs[k][0]["failures"] for k in keys)
    trials = {g: sum(runs[k][0]["trials"] for k in keys if k[1] == g) for g in ("zonotope", "gpolymatroid")}
    decs = sum(runs[k][0]["decompositions"] for k in keys)
    dt = sum(runs[k][1] for k in keys)
    ok = failures == 0 and all(t >= DCP2_TRIALS for t in trials.values()) and dt < 300
    detail = f"trials={trials} dims={list(DCP2_DIMS)} decompositions={decs} failures={failures}"
    assert emit(4, ok, detail, dt, 300)


def test_criterion_05_b4_closure_suite():
    rep, dt = dcp2_runs()[("b4", "zonotope", 4)]
    ok = rep["failures"] == 0 and rep["trials"] >= B4_TRIALS and dt < 300
    detail = f"trials={rep['trials']} decompositions={rep['decompositions']} failures={rep['failures']}"
    assert emit(5, ok, detail, dt, 300)


def test_criterion_06_negative_control():
    def go():
        forced = UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]), check=False)
        try:
            integral_decompose(forced, hull([(0, 0), (1, 1)]), hull([(1, 0), (0, 1)]), (1, 1))
            failure = None
        except IntegralityFailure as exc:
            failure = exc
        try:
            UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]))
            rejected = False
        except NotUnimodular:
            rejected = True
        return failure, rejected

    (failure, rejected), dt = timed(go)
    ok = failure is not None and rejected and dt < 1
    lam = failure.state.get("lam") if failure else None
    assert emit(6, ok, f"IntegralityFailure={failure is not None} lambda={lam} rejected={rejected}", dt, 1)


def test_criterion_07_gpolymatroid_sums_stay_mnat():
    rep, dt = timed(lambda: run_mnat_sum_closure(SEED, 200, max_dim=4))
    ok = rep["failures"] == 0 and rep["trials"] >= 200 and dt < 120
    assert emit(7, ok, f"pairs={rep['trials']} failures={rep['failures']}", dt, 120)


def test_criterion_08_split_structure():
    runs = dcp2_runs()
    totals = {}
    for rep, _ in runs.values():
        for strat, st in rep["splits"].items():
            acc = totals.setdefault(strat, {"count": 0, "trivial_intersection": 0, "potential_decreasing": 0})
            for k, v in st.items():
                acc[k] += v
    ok = set(totals) == {"iterative", "vertex"} and all(
        t["count"] > 0 and t["trivial_intersection"] == t["count"] == t["potential_decreasing"]
        for t in totals.values()
    )
    detail = ", ".join(
        f"{s}: {t['trivial_intersection']}/{t['count']} trivial meets, "
        f"{t['potential_decreasing']}/{t['count']} decreasing" for s, t in sorted(totals.items())
    )
    assert emit(8, ok, detail, 0.0, None)


def test_criterion_09_hull_of_sum_is_sum_of_hulls():
    rep, dt = timed(lambda: run_hull_sum_oracle(SEED, 500, max_dim=3, max_points=8))
    ok = rep["failures"] == 0 and rep["trials"] >= 500 and dt < 60
    assert emit(9, ok, f"pairs={rep['trials']} failures={rep['failures']}", dt, 60)


def test_criterion_10_transform_equivalence():
    rep, dt = timed(lambda: run_transform_equivalence(SEED, 100))
    ok = rep["failures"] == 0 and rep["trials"] >= 100 and dt < 120
    detail = f"pairs={rep['trials']} members={rep['members']} failures={rep['failures']}"
    assert emit(10, ok, detail, dt, 120)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
