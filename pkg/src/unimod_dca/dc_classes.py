"""Discrete convexity classes generated by unimodular systems.

A polytope belongs to the class of a unimodular matrix ``A`` when it is an
integer polytope and the direction space of each of its faces is spanned by
the columns of ``A`` that lie inside it.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from typing import Mapping, Sequence

from .config import Budget
from .errors import (
    DimensionMismatch,
    NotParamodular,
    NotSubmodular,
    NotSupermodular,
    NotUnimodular,
    NotUnimodularTransform,
)
from .exact_linalg import (
    IntMatrix,
    Subspace,
    _integer_row,
    _norm,
    columns_inside_subspace,
    determinant,
    is_integral,
    primitive,
    span_of_columns,
    unimodularity_witness,
)
from .lattice_sets import LatticeSet
from .polytopes import Face, Polytope, faces, hull, minkowski_sum_polytopes

log = logging.getLogger(__name__)

__all__ = [
    "UnimodularSystem",
    "ClassMembership",
    "system_mnat",
    "system_b4",
    "system_twisted_mnat",
    "transform",
    "in_class",
    "edge_directions_check_mnat",
    "zonotope",
    "gpolymatroid_points",
    "MAX_GROUND_SET",
]

MAX_GROUND_SET = 6


@dataclasses.dataclass(frozen=True)
class UnimodularSystem:
    """Columns of a unimodular matrix.

    Unimodularity is checked at construction; pass ``check=False`` to skip
    that (only useful for negative controls).
    """

    matrix: IntMatrix
    name: str | None = None
    check: dataclasses.InitVar[bool] = True

    def __post_init__(self, check):
        m = self.matrix
        if not isinstance(m, IntMatrix):
            m = IntMatrix.from_rows(m)
            object.__setattr__(self, "matrix", m)
        if check:
            bad = unimodularity_witness(m)
            if bad is not None:
                cols, det = bad
                if not cols:
                    raise NotUnimodular(f"matrix {m.tolist()} is not of full row rank")
                raise NotUnimodular(f"columns {list(cols)} have minor {det}")
        seen = {}
        for j, c in enumerate(m.columns()):
            key = tuple(primitive(c)) if any(c) else c
            neg = tuple(-x for x in key)
            for k in (key, neg):
                if k in seen:
                    log.warning(
                        "columns %d and %d are parallel; they do not change the class", seen[k], j
                    )
            seen.setdefault(key, j)

    @property
    def n(self) -> int:
        return self.matrix.n_rows

    @property
    def m(self) -> int:
        return self.matrix.n_cols

    def columns(self):
        return self.matrix.columns()


def system_mnat(n: int) -> UnimodularSystem:
    """Unit vectors e_i followed by e_i - e_j (i < j) in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    cols = []
    for i in range(n):
        cols.append(tuple(int(k == i) for k in range(n)))
    for i, j in itertools.combinations(range(n), 2):
        cols.append(tuple(1 if k == i else -1 if k == j else 0 for k in range(n)))
    return UnimodularSystem(IntMatrix.from_columns(cols), f"mnat{n}")


B4_ROWS = (
    (1, 0, 0, 0, 1, 0, 0, 1, 1),
    (0, 1, 0, 0, 1, 1, 0, 0, 1),
    (0, 0, 1, 0, 0, 1, 1, 0, 1),
    (0, 0, 0, 1, 0, 0, 1, 1, 1),
)


def system_b4() -> UnimodularSystem:
    return UnimodularSystem(IntMatrix(B4_ROWS), "b4")


def transform(sys: UnimodularSystem, t) -> UnimodularSystem:
    """The system ``T @ A`` for a square integer matrix with determinant +-1."""
    t = t if isinstance(t, IntMatrix) else IntMatrix.from_rows(t)
    if t.shape != (sys.n, sys.n):
        raise DimensionMismatch(f"transform must be {sys.n}x{sys.n}, got {t.shape}")
    d = determinant(t)
    if d not in (1, -1):
        raise NotUnimodularTransform(f"transform has determinant {d}")
    name = f"T*{sys.name}" if sys.name else None
    return UnimodularSystem(t @ sys.matrix, name, check=False)


def system_twisted_mnat(n: int, positive: int) -> UnimodularSystem:
    """``diag(1,..,1,-1,..,-1) @ A^M`` with ``positive`` leading ones."""
    if not 0 <= positive <= n:
        raise ValueError("positive must lie in [0, n]")
    t = IntMatrix.diag([1] * positive + [-1] * (n - positive))
    out = transform(system_mnat(n), t)
    return dataclasses.replace(out, name=f"twisted{n}_{positive}", check=False)


@dataclasses.dataclass(frozen=True)
class ClassMembership:
    """Truthy result of :func:`in_class`; carries a witness when false."""

    member: bool
    reason: str = "ok"
    witness: object = None

    def __bool__(self):
        return self.member


def in_class(sys: UnimodularSystem, p: Polytope, budget: Budget | None = None) -> ClassMembership:
    if sys.n != p.dim:
        raise DimensionMismatch(f"system lives in Q^{sys.n}, polytope in Q^{p.dim}")
    for v in p.vertices:
        if not is_integral(v):
            return ClassMembership(False, "fractional_vertex", v)
    verdict: dict[Subspace, bool] = {}
    for f in faces(p, budget):
        if f.dim == 0:
            continue
        ok = verdict.get(f.lins)
        if ok is None:
            ok = span_of_columns(sys.matrix, columns_inside_subspace(sys.matrix, f.lins)) == f.lins
            verdict[f.lins] = ok
        if not ok:
            return ClassMembership(False, "face_span", f)
    return ClassMembership(True)


def _edge_direction(f: Face) -> tuple[int, ...]:
    u, v = f.vertices
    return tuple(primitive(_integer_row([_norm(a - b) for a, b in zip(u, v)])))


def _mnat_direction(d: Sequence[int]) -> bool:
    nz = sorted(c for c in d if c)
    return nz in ([1], [-1], [-1, 1])


def edge_directions_check_mnat(p: Polytope, budget: Budget | None = None) -> bool:
    """Every edge parallel to some e_i or e_i - e_j."""
    return all(_mnat_direction(_edge_direction(f)) for f in faces(p, budget) if f.dim == 1)


def zonotope(sys: UnimodularSystem, selection: Sequence[int], multiplicities: Sequence[int] = None) -> Polytope:
    """Minkowski sum of the segments ``[0, k_j a^j]`` over the selection."""
    selection = list(selection)
    if multiplicities is None:
        multiplicities = [1] * len(selection)
    if len(multiplicities) != len(selection):
        raise ValueError("one multiplicity per selected column")
    if any(k < 1 for k in multiplicities):
        raise ValueError("multiplicities must be positive")
    n = sys.n
    out = hull([(0,) * n])
    for j, k in zip(selection, multiplicities):
        a = sys.matrix.column(j)
        out = minkowski_sum_polytopes(out, hull([(0,) * n, tuple(k * c for c in a)]))
    return out


# ---------------------------------------------------------------------------
# g-polymatroids


def _table(f, n: int, label: str) -> list[int]:
    size = 1 << n
    if isinstance(f, Mapping):
        missing = [x for x in range(size) if x not in f]
        if missing:
            raise ValueError(f"{label} is missing subsets {missing[:4]}")
        return [int(f[x]) for x in range(size)]
    f = list(f)
    if len(f) != size:
        raise ValueError(f"{label} needs {size} values, got {len(f)}")
    return [int(v) for v in f]


def _subset(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def gpolymatroid_points(rho, mu, n: int | None = None) -> LatticeSet:
    """Integer points of the g-polymatroid ``mu(X) <= x(X) <= rho(X)``.

    ``rho`` and ``mu`` are tables indexed by subset bitmask (bit ``i`` set
    means element ``i`` is in the subset).  Submodularity, supermodularity
    and paramodularity are verified over all pairs before scanning.
    """
    if n is None:
        size = len(rho)
        n = size.bit_length() - 1
        if 1 << n != size:
            raise ValueError("table length must be a power of two")
    if n > MAX_GROUND_SET:
        raise ValueError(f"ground sets larger than {MAX_GROUND_SET} are not supported")
    rho = _table(rho, n, "rho")
    mu = _table(mu, n, "mu")
    if rho[0] != 0 or mu[0] != 0:
        raise ValueError("rho and mu must vanish on the empty set")
    size = 1 << n
    for x in range(size):
        for y in range(size):
            if rho[x] + rho[y] < rho[x | y] + rho[x & y]:
                raise NotSubmodular(
                    "rho is not submodular", (_subset(x, n), _subset(y, n))
                )
            if mu[x] + mu[y] > mu[x | y] + mu[x & y]:
                raise NotSupermodular(
                    "mu is not supermodular", (_subset(x, n), _subset(y, n))
                )
            if rho[x] - mu[y] < rho[x & ~y] - mu[y & ~x]:
                raise NotParamodular(
                    "rho and mu are not paramodular", (_subset(x, n), _subset(y, n))
                )
    lo = [mu[1 << i] for i in range(n)]
    hi = [rho[1 << i] for i in range(n)]
    members = [(m, _subset(m, n)) for m in range(1, size)]
    pts = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        for m, sub in members:
            s = sum(x[i] for i in sub)
            if s < mu[m] or s > rho[m]:
                break
        else:
            pts.append(x)
    return LatticeSet(n, tuple(pts))


def gpolymatroid_polytope(rho, mu, n: int | None = None) -> Polytope:
    pts = gpolymatroid_points(rho, mu, n)
    return hull(pts.points)
