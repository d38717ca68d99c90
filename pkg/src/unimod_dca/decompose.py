"""Integral Minkowski decomposition for classes of unimodular systems.

Given integer polytopes ``P1`` and ``P2`` in the class of a unimodular
system ``A`` and an integer point ``z`` of ``P1 + P2``, :func:`integral_decompose`
returns integer points ``x* in P1`` and ``y* in P2`` with ``z = x* + y*``.

The construction runs in two stages.  First a real split ``z = x + y`` is
pushed until the direction spaces of the minimal faces ``F1`` (of ``x``)
and ``F2`` (of ``y``) meet only in the origin.  Then, starting from integer
vertices ``x0 in F1`` and ``y0 in F2``, the integer gap
``d_z = z - x0 - y0`` is written in a basis of columns of ``A`` adapted to
``F1`` and ``F2``; unimodularity makes the coefficients integral and the
two partial sums move ``x0`` and ``y0`` onto ``x*`` and ``y*``.

Every claim the argument relies on is re-checked at runtime; a failed check
raises instead of being logged.
"""

from __future__ import annotations

import dataclasses
import enum
from fractions import Fraction
from typing import Sequence

from .config import Budget
from .dc_classes import UnimodularSystem, in_class
from .errors import ClassViolation, DCAError, IntegralityFailure, NotInSum, NotInPolytope
from .exact_linalg import (
    Subspace,
    _norm,
    columns_inside_subspace,
    dot,
    extend_basis,
    is_integral,
    rational_str,
    rvec,
    solve_in_basis,
)
from .lattice_sets import LatticeSet, minkowski_sum
from .polytopes import (
    Face,
    Polytope,
    labelled_sum,
    lattice_points,
    lineality_space,
    max_step,
    minimal_face_containing,
)

__all__ = [
    "Strategy",
    "Split",
    "Decomposition",
    "DCP2Report",
    "convex_combination",
    "split_point",
    "integral_decompose",
    "verify_dcp2",
]


class Strategy(str, enum.Enum):
    ITERATIVE = "iterative"
    VERTEX = "vertex"


def _add(u, v):
    return tuple(_norm(a + b) for a, b in zip(u, v))


def _sub(u, v):
    return tuple(_norm(a - b) for a, b in zip(u, v))


def _scale(c, v):
    return tuple(_norm(c * a) for a in v)


def _ints(v):
    return tuple(int(c) for c in v)


def convex_combination(p: Polytope, z: Sequence) -> list[tuple[Fraction, int]]:
    """Weights ``(theta, vertex_index)`` with ``z = sum theta * v``.

    Recursive ray shooting: from a vertex ``w`` of the minimal face of ``z``
    walk through ``z`` until the relative boundary of that face, and recurse
    on the lower-dimensional face hit there.
    """
    z = rvec(z)
    face = minimal_face_containing(p, z)
    idx = min(face.vertex_indices, key=lambda i: p.vertices[i])
    w = p.vertices[idx]
    if face.dim == 0 or w == z:
        return [(Fraction(1), idx)]
    _, hi = max_step(p, w, _sub(z, w))
    far = _add(w, _scale(hi, _sub(z, w)))
    rest = convex_combination(p, far)
    t = Fraction(1) / hi
    out = [(1 - t, idx)] + [(t * th, j) for th, j in rest]
    return [(th, j) for th, j in out if th]


@dataclasses.dataclass
class Split:
    x: tuple
    y: tuple
    face1: Face
    face2: Face
    strategy: str
    potentials: list[int] = dataclasses.field(default_factory=list)

    @property
    def intersection(self) -> Subspace:
        return self.face1.lins & self.face2.lins


def _initial_split(p1: Polytope, p2: Polytope, z: tuple) -> tuple[tuple, tuple]:
    total, labels = labelled_sum(p1, p2)
    if len(z) != total.dim:
        raise NotInSum(f"{z} has the wrong dimension")
    if not total.contains(z):
        raise NotInSum(f"{tuple(rational_str(c) for c in z)} is not in P1 + P2")
    x = y = (0,) * total.dim
    for th, k in convex_combination(total, z):
        i, j = labels[k]
        x = _add(x, _scale(th, p1.vertices[i]))
        y = _add(y, _scale(th, p2.vertices[j]))
    return x, y


def _potential(f1: Face, f2: Face) -> int:
    return f1.lins.dim + f2.lins.dim


def _split_iterative(p1, p2, z, x, y) -> Split:
    f1, f2 = minimal_face_containing(p1, x), minimal_face_containing(p2, y)
    potentials = [_potential(f1, f2)]
    zero = lineality_space(p1) & lineality_space(p2)
    while True:
        common = f1.lins & f2.lins
        if common == zero:
            return Split(x, y, f1, f2, Strategy.ITERATIVE.value, potentials)
        d = common.basis[0]
        lo1, hi1 = max_step(p1, x, d)
        lo2, hi2 = max_step(p2, y, _scale(-1, d))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if not (lo < 0 < hi):
            raise DCAError("point left the relative interior of its minimal face")
        lam = hi if hi > 0 else lo
        x, y = _add(x, _scale(lam, d)), _sub(y, _scale(lam, d))
        f1, f2 = minimal_face_containing(p1, x), minimal_face_containing(p2, y)
        potentials.append(_potential(f1, f2))
        if potentials[-1] >= potentials[-2]:
            raise DCAError(f"face dimension potential did not decrease: {potentials}")


def _split_vertex(p1, p2, z, x, y) -> Split:
    """Walk from ``x`` to a vertex of ``Q = P1 ∩ (z - P2)``.

    Works purely on the inequality description of ``Q``: while the tight
    rows leave a nonzero null direction, move along it until another row
    becomes tight.
    """
    n = p1.dim
    eqs = list(p1.equations) + [
        (tuple(-c for c in w), _norm(b - dot(w, z))) for w, b in p2.equations
    ]
    ineqs = list(p1.facets) + [
        (tuple(-c for c in a), _norm(b - dot(a, z))) for a, b in p2.facets
    ]
    for _ in range(n + 1):
        tight = [a for a, b in eqs] + [a for a, b in ineqs if dot(a, x) == b]
        null = Subspace.span(tight, n).complement()
        if null.is_zero():
            break
        d = null.basis[0]
        lo = hi = None
        for a, b in ineqs:
            ad = dot(a, d)
            if ad == 0:
                continue
            t = _norm(Fraction(b - dot(a, x)) / ad)
            if ad > 0:
                hi = t if hi is None or t < hi else hi
            else:
                lo = t if lo is None or t > lo else lo
        lam = hi if hi is not None and hi != 0 else lo
        if lam is None or lam == 0:
            raise DCAError("unbounded or degenerate direction in the split polytope")
        x = _add(x, _scale(lam, d))
    else:
        raise DCAError("vertex walk did not terminate")
    y = _sub(z, x)
    f1, f2 = minimal_face_containing(p1, x), minimal_face_containing(p2, y)
    return Split(x, y, f1, f2, Strategy.VERTEX.value, [_potential(f1, f2)])


def split_point(p1: Polytope, p2: Polytope, z: Sequence, strategy="iterative") -> Split:
    """Real points ``x in P1``, ``y in P2`` with ``x + y = z`` whose minimal
    faces have direction spaces meeting only in the origin."""
    strategy = Strategy(strategy)
    z = rvec(z)
    x, y = _initial_split(p1, p2, z)
    if strategy is Strategy.ITERATIVE:
        s = _split_iterative(p1, p2, z, x, y)
    else:
        s = _split_vertex(p1, p2, z, x, y)
    if _add(s.x, s.y) != z or not p1.contains(s.x) or not p2.contains(s.y):
        raise DCAError("split does not reassemble z")
    if not s.intersection.is_zero():
        raise DCAError("split faces share a nonzero direction")
    return s


@dataclasses.dataclass
class Decomposition:
    z: tuple
    x_star: tuple
    y_star: tuple
    x: tuple
    y: tuple
    x_circ: tuple
    y_circ: tuple
    face1: Face
    face2: Face
    d_z: tuple
    d_x: tuple
    d_y: tuple
    basis_columns: tuple
    s: int
    t: int
    lam: tuple
    strategy: str
    potentials: list
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return _state_dict({f.name: getattr(self, f.name) for f in dataclasses.fields(self)})


def _jsonable(v):
    if isinstance(v, Face):
        return {"dim": v.dim, "vertices": [[rational_str(c) for c in p] for p in v.vertices]}
    if isinstance(v, (tuple, list)):
        return [_jsonable(c) for c in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(c) for k, c in v.items()}
    if isinstance(v, Fraction):
        return rational_str(v)
    return v


def _state_dict(state: dict) -> dict:
    return {k: _jsonable(v) for k, v in state.items()}


def _lex_min_vertex(f: Face) -> tuple:
    return min(f.vertices)


def integral_decompose(
    sys: UnimodularSystem,
    p1: Polytope,
    p2: Polytope,
    z: Sequence[int],
    strategy="iterative",
    check_class: bool = True,
    budget: Budget | None = None,
) -> Decomposition:
    z = tuple(z)
    if not is_integral(z):
        raise ValueError("z must be an integer point")
    z = _ints(z)
    if check_class:
        for label, p in (("P1", p1), ("P2", p2)):
            verdict = in_class(sys, p, budget)
            if not verdict:
                raise ClassViolation(f"{label} is not in the class ({verdict.reason})", verdict.witness)

    split = split_point(p1, p2, z, strategy)
    x, y, f1, f2 = split.x, split.y, split.face1, split.face2
    L1, L2 = f1.lins, f2.lins
    state = {"z": z, "x": x, "y": y, "face1": f1, "face2": f2, "strategy": split.strategy}
    checks: dict[str, bool] = {}

    x_circ, y_circ = _lex_min_vertex(f1), _lex_min_vertex(f2)
    checks["x_circ_integral"] = is_integral(x_circ)
    checks["y_circ_integral"] = is_integral(y_circ)
    if not (checks["x_circ_integral"] and checks["y_circ_integral"]):
        raise ClassViolation("minimal face has a fractional vertex", state)
    x_circ, y_circ = _ints(x_circ), _ints(y_circ)
    d_z = _sub(z, _add(x_circ, y_circ))
    span_sum = L1 + L2
    checks["d_z_integral"] = is_integral(d_z)
    checks["d_z_in_face_span_sum"] = span_sum.contains(d_z)
    state.update(x_circ=x_circ, y_circ=y_circ, d_z=d_z, checks=checks)
    if not checks["d_z_in_face_span_sum"]:
        raise DCAError("d_z escaped lins(F1) + lins(F2)")

    A = sys.matrix
    n = A.n_rows
    b1 = extend_basis(A, (), columns_inside_subspace(A, L1), L1)
    b2 = extend_basis(A, b1, columns_inside_subspace(A, L2), span_sum)
    basis = extend_basis(A, b2, range(A.n_cols), Subspace.full(n))
    s, t = len(b1), len(b2)
    lam = solve_in_basis(A.select_columns(basis), d_z)
    checks["lambda_integral"] = is_integral(lam[:t])
    checks["lambda_tail_zero"] = not any(lam[t:])
    state.update(basis_columns=basis, s=s, t=t, lam=lam)
    if not (checks["lambda_integral"] and checks["lambda_tail_zero"]):
        raise IntegralityFailure(
            f"coefficients {[rational_str(c) for c in lam]} are not integral on the first {t} columns",
            _state_dict(state),
        )

    cols = [A.column(j) for j in basis]
    d_x = (0,) * n
    for c, a in zip(lam[:s], cols[:s]):
        d_x = _add(d_x, _scale(c, a))
    d_y = (0,) * n
    for c, a in zip(lam[s:t], cols[s:t]):
        d_y = _add(d_y, _scale(c, a))
    x_star, y_star = _ints(_add(x_circ, d_x)), _ints(_add(y_circ, d_y))
    checks["d_x_in_face1_span"] = L1.contains(d_x)
    checks["d_y_in_face2_span"] = L2.contains(d_y)
    checks["d_z_split"] = _add(d_x, d_y) == d_z
    checks["z_reassembled"] = _add(x_star, y_star) == z
    residual = _sub(x, x_star)
    checks["residual_balanced"] = residual == _sub(y_star, y)
    checks["residual_in_face_span_intersection"] = (L1 & L2).contains(residual)
    checks["x_star_in_P1"] = p1.contains(x_star)
    checks["y_star_in_P2"] = p2.contains(y_star)

    dec = Decomposition(
        z, x_star, y_star, x, y, x_circ, y_circ, f1, f2, d_z, d_x, d_y,
        tuple(basis), s, t, lam, split.strategy, list(split.potentials), checks,
    )
    if not dec.ok:
        failed = [k for k, v in checks.items() if not v]
        raise DCAError(f"decomposition checks failed: {failed}")
    return dec


# ---------------------------------------------------------------------------


@dataclasses.dataclass
class DCP2Report:
    system: str | None
    sum_in_class: bool
    class_witness: object
    n_lattice_points: int
    n_brute_force: int
    lattice_sets_equal: bool
    decompositions: int
    max_iterations: int
    failures: list
    splits: dict = dataclasses.field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.sum_in_class
            and self.lattice_sets_equal
            and not self.failures
        )

    def to_dict(self) -> dict:
        d = _state_dict({f.name: getattr(self, f.name) for f in dataclasses.fields(self)})
        d["ok"] = self.ok
        return d


def verify_dcp2(
    sys: UnimodularSystem,
    p1: Polytope,
    p2: Polytope,
    strategies: Sequence[str] = ("iterative", "vertex"),
    budget: Budget | None = None,
) -> DCP2Report:
    """Check Minkowski closure of the class and integral decomposability of
    every integer point of ``P1 + P2``.

    Failures are collected as counterexample records rather than raised.
    """
    failures = []
    for label, p in (("P1", p1), ("P2", p2)):
        verdict = in_class(sys, p, budget)
        if not verdict:
            failures.append({"stage": f"{label}_in_class", "reason": verdict.reason,
                             "witness": _jsonable(verdict.witness)})
    total, _ = labelled_sum(p1, p2)
    verdict = in_class(sys, total, budget)
    if not verdict:
        failures.append({"stage": "sum_in_class", "reason": verdict.reason,
                         "witness": _jsonable(verdict.witness)})
    lat = lattice_points(total, budget)
    brute = minkowski_sum(lattice_points(p1, budget), lattice_points(p2, budget))
    equal = lat == brute
    if not equal:
        missing = [p for p in lat.points if p not in brute]
        failures.append({"stage": "lattice_sum", "missing": [list(p) for p in missing]})
    count = 0
    max_iter = 0
    splits = {s: {"count": 0, "trivial_intersection": 0, "potential_decreasing": 0} for s in strategies}
    s1 = lattice_points(p1, budget)
    s2 = lattice_points(p2, budget)
    for z in lat.points:
        for strat in strategies:
            try:
                dec = integral_decompose(sys, p1, p2, z, strat, check_class=False, budget=budget)
            except (DCAError, NotInPolytope) as exc:
                rec = {"stage": "decompose", "z": list(z), "strategy": strat,
                       "error": type(exc).__name__, "message": str(exc)}
                if isinstance(exc, IntegralityFailure):
                    rec["state"] = exc.state
                failures.append(rec)
                continue
            count += 1
            max_iter = max(max_iter, len(dec.potentials) - 1)
            st = splits[strat]
            st["count"] += 1
            st["trivial_intersection"] += (dec.face1.lins & dec.face2.lins).is_zero()
            st["potential_decreasing"] += all(a > b for a, b in zip(dec.potentials, dec.potentials[1:]))
            if dec.x_star not in s1 or dec.y_star not in s2:
                failures.append({"stage": "decompose_membership", "z": list(z), "strategy": strat,
                                 "decomposition": dec.to_dict()})
    return DCP2Report(
        sys.name, bool(verdict), verdict.witness, len(lat), len(brute), equal,
        count, max_iter, failures, splits,
    )

