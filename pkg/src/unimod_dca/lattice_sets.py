"""Finite subsets of Z^n and the discrete-convexity predicates on them."""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptySet, ParseError

__all__ = [
    "LatticeSet",
    "minkowski_sum",
    "no_hole_check",
    "holes",
    "sum_no_hole_check",
    "is_mnat_convex",
    "mnat_violation",
    "is_lnat_convex",
    "lnat_violation",
    "supports",
]


@dataclasses.dataclass(frozen=True)
class LatticeSet:
    """Deduplicated, lexicographically sorted set of integer points."""

    dim: int
    points: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        pts = set()
        for p in self.points:
            p = tuple(p)
            if len(p) != self.dim:
                raise DimensionMismatch(f"point {p} does not live in Z^{self.dim}")
            if any(type(c) is not int for c in p):
                raise ParseError(f"non-integer coordinate in {p}")
            pts.add(p)
        object.__setattr__(self, "points", tuple(sorted(pts)))
        object.__setattr__(self, "_lookup", frozenset(pts))

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "LatticeSet":
        points = [tuple(int(c) for c in p) for p in points]
        if dim is None:
            if not points:
                raise ValueError("dimension of an empty set must be given")
            dim = len(points[0])
        return cls(dim, tuple(points))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._lookup

    def translate(self, v: Sequence[int]) -> "LatticeSet":
        return LatticeSet(self.dim, tuple(tuple(a + b for a, b in zip(p, v)) for p in self.points))


def _check_nonempty(s: LatticeSet):
    if not s.points:
        raise EmptySet("predicate is only defined on nonempty sets")


def minkowski_sum(s1: LatticeSet, s2: LatticeSet) -> LatticeSet:
    if s1.dim != s2.dim:
        raise DimensionMismatch(f"cannot add sets in Z^{s1.dim} and Z^{s2.dim}")
    return LatticeSet(
        s1.dim, tuple({tuple(a + b for a, b in zip(x, y)) for x in s1.points for y in s2.points})
    )


def holes(s: LatticeSet) -> LatticeSet:
    """Integer points of conv(S) that are missing from S."""
    from .polytopes import hull, lattice_points

    _check_nonempty(s)
    filled = lattice_points(hull(s.points))
    return LatticeSet(s.dim, tuple(p for p in filled.points if p not in s))


def no_hole_check(s: LatticeSet) -> bool:
    """True iff S equals the integer points of its convex hull."""
    return len(holes(s)) == 0


def sum_no_hole_check(s1: LatticeSet, s2: LatticeSet) -> bool:
    _check_nonempty(s1)
    _check_nonempty(s2)
    return no_hole_check(minkowski_sum(s1, s2))


def supports(z: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Positive and negative supports, as 0-based index tuples."""
    return (
        tuple(i for i, c in enumerate(z) if c > 0),
        tuple(i for i, c in enumerate(z) if c < 0),
    )


def _shift(p: tuple, i: int, di: int, j: int | None = None, dj: int = 0) -> tuple:
    q = list(p)
    q[i] += di
    if j is not None:
        q[j] += dj
    return tuple(q)


def mnat_violation(s: LatticeSet):
    """A triple ``(x, y, i)`` breaking the exchange axiom, or None."""
    _check_nonempty(s)
    look = s._lookup
    for x in s.points:
        for y in s.points:
            if x == y:
                continue
            diff = [a - b for a, b in zip(x, y)]
            plus, minus = supports(diff)
            for i in plus:
                if _shift(x, i, -1) in look and _shift(y, i, 1) in look:
                    continue
                if any(
                    _shift(x, i, -1, j, 1) in look and _shift(y, i, 1, j, -1) in look for j in minus
                ):
                    continue
                return x, y, i
    return None


def is_mnat_convex(s: LatticeSet) -> bool:
    return mnat_violation(s) is None


def _midpoints(x: Sequence[int], y: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # -((-a) // 2) is the mathematical ceiling, also for negative sums
    up = tuple(-(-(a + b) // 2) for a, b in zip(x, y))
    down = tuple((a + b) // 2 for a, b in zip(x, y))
    return up, down


def lnat_violation(s: LatticeSet):
    """``(x, y, ceil_mid, floor_mid)`` for the first pair whose rounded
    midpoints are not both in S, or None."""
    _check_nonempty(s)
    pts = s.points
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            up, down = _midpoints(pts[a], pts[b])
            if up not in s._lookup or down not in s._lookup:
                return pts[a], pts[b], up, down
    return None


def is_lnat_convex(s: LatticeSet) -> bool:
    return lnat_violation(s) is None
