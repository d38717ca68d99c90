"""Exact bounded rational polytopes.

A :class:`Polytope` is built from points (V-representation first) and carries
a derived H-representation: primitive integer facet normals with rational
offsets, plus the equations of its affine hull when it is not
full-dimensional.  Facets are computed in the coordinates of the affine hull,
which for a subspace in reduced row-echelon form are simply its pivot
coordinates.

Only bounded polyhedra are supported, so the lineality space of every
polytope (and of every face) is the zero subspace.  :func:`lineality_space`
exists to make that explicit where callers need it.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .config import Budget, default_budget
from .errors import (
    DimensionMismatch,
    EmptyInput,
    NotInPolytope,
    SizeExceeded,
    ZeroDirection,
)
from .exact_linalg import (
    IntMatrix,
    Rational,
    Subspace,
    _Echelon,
    _integer_row,
    _norm,
    dot,
    is_integral,
    primitive,
    rvec,
    solve_in_basis,
)
from .lattice_sets import LatticeSet

__all__ = [
    "Polytope",
    "Face",
    "hull",
    "lattice_points",
    "is_integer_polytope",
    "faces",
    "minimal_face_containing",
    "relative_interior_point",
    "minkowski_sum_polytopes",
    "max_step",
    "lineality_space",
]

Halfspace = tuple[tuple[int, ...], Rational]


@dataclasses.dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    ``facets`` are pairs ``(a, b)`` meaning ``a.x <= b``; ``equations`` are
    pairs ``(w, c)`` meaning ``w.x == c``.  ``incidence[i]`` is the set of
    vertex indices tight at facet ``i``.  ``lins`` is the direction space
    of the affine hull.  Equality only looks at the vertex list.
    """

    dim: int
    vertices: tuple[tuple[Rational, ...], ...]
    facets: tuple[Halfspace, ...] = dataclasses.field(default=(), compare=False, repr=False)
    equations: tuple[Halfspace, ...] = dataclasses.field(default=(), compare=False, repr=False)
    incidence: tuple[frozenset, ...] = dataclasses.field(default=(), compare=False, repr=False)
    lins: Subspace = dataclasses.field(default=None, compare=False, repr=False)

    @property
    def affine_dim(self) -> int:
        return self.lins.dim

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of length {len(x)} tested against a polytope in Q^{self.dim}")
        return all(dot(w, x) == c for w, c in self.equations) and all(
            dot(a, x) <= b for a, b in self.facets
        )

    __contains__ = contains

    def tight_facets(self, x: Sequence) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(self.facets) if dot(a, x) == b)

    def translate(self, v: Sequence) -> "Polytope":
        v = rvec(v)
        return hull([tuple(a + b for a, b in zip(p, v)) for p in self.vertices])

    def transform(self, t: IntMatrix) -> "Polytope":
        return hull([t.apply(p) for p in self.vertices])


@dataclasses.dataclass(frozen=True)
class Face:
    parent: Polytope = dataclasses.field(repr=False)
    vertex_indices: frozenset
    dim: int
    lins: Subspace = dataclasses.field(compare=False, repr=False)

    @property
    def vertices(self) -> list[tuple]:
        return [self.parent.vertices[i] for i in sorted(self.vertex_indices)]

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={self.vertices})"


def lineality_space(p: Polytope) -> Subspace:
    """Always ``{0}``: polytopes are bounded."""
    return Subspace.zero(p.dim)


# ---------------------------------------------------------------------------
# hull


def _sub(u, v):
    return tuple(_norm(a - b) for a, b in zip(u, v))


def _dd_extreme_rays(rows: list[list[int]]) -> list[list[int]]:
    """Extreme rays of the pointed cone ``{y : r.y <= 0 for r in rows}``.

    Plain double description: start from a simplicial cone on ``D``
    independent rows and add the remaining rows one at a time, combining
    positive/negative ray pairs that pass the combinatorial adjacency test.
    Rows are assumed to have full column rank.
    """
    D = len(rows[0])
    ech = _Echelon(D)
    init = []
    for i, r in enumerate(rows):
        if ech.add(r):
            init.append(i)
            if len(init) == D:
                break
    if len(init) < D:
        raise ValueError("constraint rows do not have full column rank")
    m0 = IntMatrix.from_rows([rows[i] for i in init])
    all_init = 0
    for i in init:
        all_init |= 1 << i
    rays: list[list[int]] = []
    masks: list[int] = []
    for j in range(D):
        rhs = [0] * D
        rhs[j] = -1
        rays.append(primitive(_integer_row(solve_in_basis(m0, rhs))))
        masks.append(all_init & ~(1 << init[j]))

    done = set(init)
    for i, r in enumerate(rows):
        if i in done:
            continue
        bit = 1 << i
        vals = [sum(a * b for a, b in zip(r, y)) for y in rays]
        pos = [q for q, v in enumerate(vals) if v > 0]
        if not pos:
            for q, v in enumerate(vals):
                if v == 0:
                    masks[q] |= bit
            continue
        neg = [q for q, v in enumerate(vals) if v < 0]
        new_rays, new_masks = [], []
        for q, v in enumerate(vals):
            if v == 0:
                new_rays.append(rays[q])
                new_masks.append(masks[q] | bit)
            elif v < 0:
                new_rays.append(rays[q])
                new_masks.append(masks[q])
        for p in pos:
            mp, yp, vp = masks[p], rays[p], vals[p]
            for n in neg:
                common = mp & masks[n]
                if common.bit_count() < D - 2:
                    continue
                if any(
                    (m & common) == common for q, m in enumerate(masks) if q != p and q != n
                ):
                    continue
                vn, yn = vals[n], rays[n]
                new_rays.append(primitive([vp * b - vn * a for a, b in zip(yp, yn)]))
                new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
    return rays


def _local_facets_dd(local: list[tuple]) -> list[tuple[tuple[int, ...], Rational]]:
    k = len(local[0])
    # far points first: most later points then land inside the running hull
    cen = [Fraction(sum(c[i] for c in local), len(local)) for i in range(k)]
    order = sorted(
        range(len(local)),
        key=lambda t: (-sum((a - b) ** 2 for a, b in zip(local[t], cen)), local[t]),
    )
    rows = [_integer_row(list(local[t]) + [-1]) for t in order]
    out = []
    for y in _dd_extreme_rays(rows):
        a, b = y[:-1], y[-1]
        if not any(a):
            continue
        g = math.gcd(*a)
        out.append((tuple(c // g for c in a), _norm(Fraction(b, g))))
    return out


def _local_facets_brute(local: list[tuple], budget: Budget) -> list[tuple[tuple[int, ...], Rational]]:
    """Test every affinely independent k-subset of points as a supporting
    hyperplane.  Exponential, kept as an independent oracle."""
    k = len(local[0])
    n_sub = math.comb(len(local), k)
    if n_sub > budget.hull_subsets:
        raise SizeExceeded(f"{n_sub} point subsets exceed the hull budget of {budget.hull_subsets}")
    found = set()
    for sub in itertools.combinations(range(len(local)), k):
        base = local[sub[0]]
        diffs = [_sub(local[s], base) for s in sub[1:]]
        plane = Subspace.span(diffs, k)
        if plane.dim != k - 1:
            continue
        normal = tuple(plane.complement().integer_basis()[0])
        vals = [dot(normal, c) for c in local]
        h = dot(normal, base)
        if h == max(vals):
            found.add((normal, h))
        if h == min(vals):
            found.add((tuple(-c for c in normal), -h))
    return list(found)


def hull(points: Iterable[Sequence], method: str = "dd", budget: Budget | None = None) -> Polytope:
    """Convex hull of a nonempty finite point set.

    ``method`` is ``"dd"`` (double description, the default) or ``"brute"``
    (supporting-hyperplane enumeration over point subsets).
    """
    budget = budget or default_budget()
    pts = sorted({rvec(p) for p in points})
    if not pts:
        raise EmptyInput("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of different dimensions")
    if len(pts) > budget.vertices:
        raise SizeExceeded(f"{len(pts)} input points exceed the vertex budget of {budget.vertices}")
    p0 = pts[0]
    lins = Subspace.span([_sub(p, p0) for p in pts[1:]], n)
    equations = []
    for w in lins.complement().integer_basis():
        lead = next(c for c in w if c)
        if lead < 0:
            w = [-c for c in w]
        equations.append((tuple(w), dot(w, p0)))
    equations.sort()
    k = lins.dim
    if k == 0:
        return Polytope(n, (p0,), (), tuple(equations), (), lins)

    piv = lins.pivots
    local = [tuple(_norm(p[j] - p0[j]) for j in piv) for p in pts]
    if method == "dd":
        loc_facets = _local_facets_dd(local)
    elif method == "brute":
        loc_facets = _local_facets_brute(local, budget)
    else:
        raise ValueError(f"unknown hull method {method!r}")

    # vertices: points whose tight facet normals span the affine hull directions
    tight = [[f for f, (a, b) in enumerate(loc_facets) if dot(a, c) == b] for c in local]
    keep = []
    for t, tf in enumerate(tight):
        ech = _Echelon(k)
        for f in tf:
            ech.add(loc_facets[f][0])
            if len(ech) == k:
                keep.append(t)
                break
    vertices = tuple(pts[t] for t in keep)

    facets = []
    for a, b in loc_facets:
        normal = [0] * n
        for i, j in enumerate(piv):
            normal[j] = a[i]
        offset = _norm(b + sum(c * p0[j] for c, j in zip(a, piv)))
        facets.append((tuple(normal), offset))
    facets.sort()
    incidence = tuple(
        frozenset(v for v, x in enumerate(vertices) if dot(a, x) == b) for a, b in facets
    )
    return Polytope(n, vertices, tuple(facets), tuple(equations), incidence, lins)


def is_integer_polytope(p: Polytope) -> bool:
    return all(is_integral(v) for v in p.vertices)


# ---------------------------------------------------------------------------
# lattice points


def _floor(x: Rational) -> int:
    return math.floor(x)


def lattice_points(p: Polytope, budget: Budget | None = None) -> LatticeSet:
    """All integer points of ``p`` via a scan over the box spanned by the
    pivot coordinates of its affine hull."""
    budget = budget or default_budget()
    n = p.dim
    if p.affine_dim == 0:
        v = p.vertices[0]
        return LatticeSet(n, (tuple(int(c) for c in v),) if is_integral(v) else ())
    piv = p.lins.pivots
    basis = p.lins.basis
    lo = [math.ceil(min(v[j] for v in p.vertices)) for j in piv]
    hi = [_floor(max(v[j] for v in p.vertices)) for j in piv]
    size = 1
    for a, b in zip(lo, hi):
        size *= max(0, b - a + 1)
    if size > budget.lattice_points:
        raise SizeExceeded(f"lattice scan of {size} boxes exceeds the budget of {budget.lattice_points}")
    if size == 0:
        return LatticeSet(n, ())

    # x = q + sum_i g_i * basis[i], with q the point of the affine hull whose
    # pivot coordinates vanish; scale everything by a common denominator
    p0 = p.vertices[0]
    q = list(p0)
    for j, b in zip(piv, basis):
        q = [x - p0[j] * y for x, y in zip(q, b)]
    den = 1
    for c in itertools.chain(q, *basis):
        if type(c) is not int and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    qs = [int(c * den) for c in q]
    bs = [[int(c * den) for c in b] for b in basis]
    facets = [(a, _floor(b)) for a, b in p.facets]
    full = len(piv) == n and den == 1 and all(c == 0 for c in qs)

    out = []
    for g in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if full:
            x = g
        else:
            sx = list(qs)
            for gi, b in zip(g, bs):
                if gi:
                    sx = [s + gi * c for s, c in zip(sx, b)]
            if den != 1 and any(s % den for s in sx):
                continue
            x = tuple(s // den for s in sx)
        for a, b in facets:
            if sum(c * y for c, y in zip(a, x)) > b:
                break
        else:
            out.append(tuple(x))
    return LatticeSet(n, tuple(out))


# ---------------------------------------------------------------------------
# faces


def _face_from_vertices(p: Polytope, idx: frozenset) -> Face:
    vs = [p.vertices[i] for i in sorted(idx)]
    lins = Subspace.span([_sub(v, vs[0]) for v in vs[1:]], p.dim)
    return Face(p, frozenset(idx), lins.dim, lins)


def faces(p: Polytope, budget: Budget | None = None) -> list[Face]:
    """Every nonempty face, from vertices up to ``p`` itself.

    Faces are generated top-down: the facets of a face ``F`` are the
    inclusion-maximal proper intersections of ``F`` with facets of ``p``.
    Results are cached on the polytope.
    """
    cached = p.__dict__.get("_faces")
    if cached is not None:
        return cached
    budget = budget or default_budget()
    top = frozenset(range(len(p.vertices)))
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for f in frontier:
            cands = {f & inc for inc in p.incidence if not f <= inc}
            cands.discard(frozenset())
            for c in cands:
                if c in seen or any(c < d for d in cands):
                    continue
                seen.add(c)
                nxt.append(c)
                if len(seen) > budget.faces:
                    raise SizeExceeded(f"more than {budget.faces} faces")
        frontier = nxt
    out = sorted(
        (_face_from_vertices(p, s) for s in seen), key=lambda f: (f.dim, sorted(f.vertex_indices))
    )
    object.__setattr__(p, "_faces", out)
    return out


def minimal_face_containing(p: Polytope, x: Sequence) -> Face:
    """The unique face with ``x`` in its relative interior."""
    x = rvec(x)
    if not p.contains(x):
        raise NotInPolytope(f"{x} is not in the polytope")
    idx = frozenset(range(len(p.vertices)))
    for i in p.tight_facets(x):
        idx &= p.incidence[i]
    return _face_from_vertices(p, idx)


def relative_interior_point(f: Face) -> tuple:
    vs = f.vertices
    m = len(vs)
    return tuple(_norm(Fraction(sum(v[i] for v in vs)) / m) for i in range(f.parent.dim))


# ---------------------------------------------------------------------------
# sums and line search


@functools.lru_cache(maxsize=256)
def labelled_sum(p1: Polytope, p2: Polytope) -> tuple[Polytope, tuple[tuple[int, int], ...]]:
    """``p1 + p2`` together with, for each of its vertices, the pair of
    vertex indices it is the sum of."""
    if p1.dim != p2.dim:
        raise DimensionMismatch(f"cannot add polytopes in Q^{p1.dim} and Q^{p2.dim}")
    label = {}
    for i, u in enumerate(p1.vertices):
        for j, v in enumerate(p2.vertices):
            label.setdefault(tuple(_norm(a + b) for a, b in zip(u, v)), (i, j))
    total = hull(label)
    return total, tuple(label[v] for v in total.vertices)


def minkowski_sum_polytopes(p1: Polytope, p2: Polytope) -> Polytope:
    return labelled_sum(p1, p2)[0]


def max_step(p: Polytope, x: Sequence, d: Sequence) -> tuple[Rational, Rational]:
    """Closed interval of ``lam`` with ``x + lam*d`` in ``p``.

    Both ends are finite since ``p`` is bounded; a direction leaving the
    affine hull gives ``(0, 0)``.
    """
    x, d = rvec(x), rvec(d)
    if len(d) != p.dim:
        raise DimensionMismatch("direction has the wrong length")
    if not any(d):
        raise ZeroDirection("zero direction")
    if not p.contains(x):
        raise NotInPolytope(f"{x} is not in the polytope")
    if any(dot(w, d) != 0 for w, _ in p.equations):
        return 0, 0
    lo = hi = None
    for a, b in p.facets:
        ad = dot(a, d)
        if ad == 0:
            continue
        t = _norm(Fraction(b - dot(a, x)) / ad)
        if ad > 0:
            hi = t if hi is None or t < hi else hi
        else:
            lo = t if lo is None or t > lo else lo
    return lo, hi
