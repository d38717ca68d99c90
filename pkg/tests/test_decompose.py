from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unimod_dca.dc_classes import UnimodularSystem, in_class, system_b4, system_mnat
from unimod_dca.decompose import integral_decompose, split_point, verify_dcp2
from unimod_dca.errors import ClassViolation, IntegralityFailure, NotInSum, NotUnimodular
from unimod_dca.exact_linalg import IntMatrix
from unimod_dca.harness import random_gpolymatroid, random_zonotope, trial_rng
from unimod_dca.lattice_sets import minkowski_sum
from unimod_dca.polytopes import hull, lattice_points

TRIANGLE = hull([(0, 0), (1, 0), (0, 1)])
SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def integral_pairs(p1, p2, z):
    """Brute-force oracle: every (x, y) of lattice points with x + y = z."""
    s2 = set(lattice_points(p2).points)
    out = []
    for x in lattice_points(p1).points:
        y = tuple(a - b for a, b in zip(z, x))
        if y in s2:
            out.append((x, y))
    return out


def test_split_of_two_axis_segments():
    p1, p2 = hull([(0, 0), (1, 0)]), hull([(0, 0), (0, 1)])
    half = Fraction(1, 2)
    for strategy in ("iterative", "vertex"):
        s = split_point(p1, p2, (half, half), strategy)
        assert s.x == (half, 0) and s.y == (0, half)
        assert s.intersection.is_zero()


def test_split_with_point_summand():
    origin = hull([(0, 0)])
    z = (Fraction(1, 3), Fraction(1, 3))
    s = split_point(TRIANGLE, origin, z)
    assert s.x == z and s.y == (0, 0)


def test_split_of_skew_segments():
    p1, p2 = hull([(0, 0), (1, 1)]), hull([(1, 0), (0, 1)])
    s = split_point(p1, p2, (1, 1))
    assert s.intersection.is_zero()


def test_point_outside_sum():
    with pytest.raises(NotInSum):
        split_point(TRIANGLE, TRIANGLE, (3, 3))


def test_triangle_plus_triangle():
    dec = integral_decompose(system_mnat(2), TRIANGLE, TRIANGLE, (1, 1))
    assert (dec.x_star, dec.y_star) in integral_pairs(TRIANGLE, TRIANGLE, (1, 1))
    assert dec.x_star in ((1, 0), (0, 1))
    assert dec.ok


def test_intervals():
    p1, p2 = hull([(0,), (2,)]), hull([(0,), (3,)])
    for strategy in ("iterative", "vertex"):
        dec = integral_decompose(system_mnat(1), p1, p2, (4,), strategy)
        assert dec.x_star in ((1,), (2,)) and dec.y_star == (4 - dec.x_star[0],)


def test_skew_segments_fail_integrality():
    forced = UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]), check=False)
    p1, p2 = hull([(0, 0), (1, 1)]), hull([(1, 0), (0, 1)])
    with pytest.raises(IntegralityFailure) as exc:
        integral_decompose(forced, p1, p2, (1, 1))
    state = exc.value.state
    assert state["lam"] == ["1/2", "1/2"]
    assert state["checks"]["lambda_integral"] is False
    with pytest.raises(NotUnimodular):
        UnimodularSystem(IntMatrix.from_rows([[1, 1], [1, -1]]))


def test_class_violation_is_caught_up_front():
    with pytest.raises(ClassViolation):
        integral_decompose(system_mnat(2), hull([(0, 0), (1, 1)]), TRIANGLE, (1, 1))


def test_decomposition_report_is_json_ready():
    import json

    d = integral_decompose(system_mnat(2), SQUARE, TRIANGLE, (1, 1)).to_dict()
    json.dumps(d)
    assert d["checks"]["z_reassembled"] is True
    assert set(d["face1"]) == {"dim", "vertices"}


def test_verify_square_and_triangle():
    rep = verify_dcp2(system_mnat(2), SQUARE, TRIANGLE)
    assert rep.ok
    assert rep.n_lattice_points == rep.n_brute_force == 8


def test_verify_unit_intervals():
    unit = hull([(0,), (1,)])
    rep = verify_dcp2(system_mnat(1), unit, unit)
    assert rep.ok and rep.n_lattice_points == 3


@given(st.integers(0, 2**32), st.integers(1, 3), st.sampled_from(["iterative", "vertex"]))
def test_decompositions_match_brute_force(seed, n, strategy):
    rng = trial_rng(seed, 0)
    sys = system_mnat(n)
    p1, p2 = random_zonotope(rng, sys), random_zonotope(rng, sys)
    brute = minkowski_sum(lattice_points(p1), lattice_points(p2))
    for z in brute.points:
        dec = integral_decompose(sys, p1, p2, z, strategy, check_class=False)
        assert (dec.x_star, dec.y_star) in integral_pairs(p1, p2, z)
        assert p1.contains(dec.x_star) and p2.contains(dec.y_star)


@given(st.integers(0, 2**32), st.integers(1, 3))
def test_iterative_potential_is_bounded(seed, n):
    rng = trial_rng(seed, 0)
    sys = system_mnat(n)
    p1, p2 = random_gpolymatroid(rng, n), random_gpolymatroid(rng, n)
    for z in minkowski_sum(lattice_points(p1), lattice_points(p2)).points:
        s = split_point(p1, p2, z, "iterative")
        assert len(s.potentials) - 1 <= s.potentials[0]
        assert all(a > b for a, b in zip(s.potentials, s.potentials[1:]))
        assert s.intersection.is_zero()


@given(st.integers(0, 2**32))
def test_b4_pairs_are_closed(seed):
    rng = trial_rng(seed, 0)
    sys = system_b4()
    p1, p2 = random_zonotope(rng, sys, max_gens=2, max_mult=1), random_zonotope(rng, sys, max_gens=2, max_mult=1)
    rep = verify_dcp2(sys, p1, p2)
    assert rep.ok, rep.failures
    assert in_class(sys, hull([v for v in lattice_points(p1).points]))
