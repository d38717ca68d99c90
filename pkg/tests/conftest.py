import itertools
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def small_ints(lo=-3, hi=3):
    return st.integers(lo, hi)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=5, lo=-2, hi=2):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]


@st.composite
def point_sets(draw, dim=None, max_points=6, box=2):
    n = dim if dim is not None else draw(st.integers(1, 3))
    pt = st.tuples(*[st.integers(-box, box)] * n)
    return draw(st.lists(pt, min_size=1, max_size=max_points))


def cofactor_det(rows):
    """Laplace expansion along the first row; an oracle independent of
    elimination."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def fraction_rank(rows):
    """Plain Fraction row reduction."""
    m = [[Fraction(c) for c in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def all_minors(rows, k):
    r, c = len(rows), len(rows[0])
    for ri in itertools.combinations(range(r), k):
        for ci in itertools.combinations(range(c), k):
            yield cofactor_det([[rows[i][j] for j in ci] for i in ri])


@pytest.fixture
def cube_points():
    return list(itertools.product((0, 1), repeat=3))


def in_hull_lp(points, q):
    """Float LP oracle: is ``q`` a convex combination of ``points``?"""
    import numpy as np
    from scipy.optimize import linprog

    pts = np.array(points, dtype=float)
    k = len(pts)
    a_eq = np.vstack([pts.T, np.ones(k)])
    b_eq = np.append(np.array(q, dtype=float), 1.0)
    res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * k, method="highs")
    return res.status == 0


def lp_vertices(points):
    """Points not in the hull of the remaining distinct points."""
    pts = sorted(set(map(tuple, points)))
    return [p for i, p in enumerate(pts) if len(pts) == 1 or not in_hull_lp(pts[:i] + pts[i + 1:], p)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
