"""Exact integer and rational linear algebra.

Nothing in here touches floating point.  Integers are Python ``int`` (so
arbitrary precision for free) and rationals are :class:`fractions.Fraction`,
normalised back to ``int`` whenever the denominator is one.  That keeps the
common all-integer case on the fast path.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .config import Budget, default_budget
from .errors import (
    DimensionMismatch,
    ParseError,
    SingularBasis,
    SizeExceeded,
    SpanFailure,
)

Rational = Union[int, Fraction]

__all__ = [
    "Rational",
    "rational",
    "rational_str",
    "IntMatrix",
    "Subspace",
    "determinant",
    "rank",
    "is_unimodular",
    "unimodularity_witness",
    "is_totally_unimodular",
    "total_unimodularity_witness",
    "span_of_columns",
    "subspace_membership",
    "columns_inside_subspace",
    "extend_basis",
    "solve_in_basis",
]


# ---------------------------------------------------------------------------
# rationals


def rational(x) -> Rational:
    """Coerce ``x`` (int, Fraction, or a string like ``"3/4"``) to a
    normalised exact rational.  Floats are refused."""
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        try:
            f = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
        if "." in x or "e" in x.lower():
            raise ParseError(f"decimal notation not accepted: {x!r}")
        return f.numerator if f.denominator == 1 else f
    raise ParseError(f"not a rational: {x!r}")


def _norm(x: Rational) -> Rational:
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def rational_str(x: Rational) -> str:
    return str(_norm(x))


def rvec(v: Iterable) -> tuple:
    return tuple(rational(c) for c in v)


def dot(u: Sequence, v: Sequence):
    return _norm(sum(a * b for a, b in zip(u, v)))


def is_integral(v: Sequence) -> bool:
    return all(type(c) is int or c.denominator == 1 for c in v)


def _integer_row(v: Sequence) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    den = 1
    for c in v:
        if type(c) is not int:
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return [int(c) for c in v]
    return [int(c * den) for c in v]


def primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g <= 1:
        return list(v)
    return [c // g for c in v]


# ---------------------------------------------------------------------------
# integer matrices


@dataclasses.dataclass(frozen=True)
class IntMatrix:
    """Exact integer matrix stored row by row.

    Columns are the vectors of a unimodular system, so most callers go
    through :meth:`column` / :meth:`columns`.
    """

    rows: tuple[tuple[int, ...], ...]
    n_cols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows:
            raise ValueError("a matrix needs at least one row")
        width = len(rows[0]) if self.n_cols < 0 else self.n_cols
        for r in rows:
            if len(r) != width:
                raise DimensionMismatch("ragged matrix rows")
            for c in r:
                if type(c) is not int:
                    raise ParseError(f"non-integer matrix entry {c!r}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n_cols", width)

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(c) for c in r) for r in rows))

    @classmethod
    def from_columns(cls, cols, n_rows: int | None = None) -> "IntMatrix":
        cols = [tuple(c) for c in cols]
        if not cols:
            if n_rows is None:
                raise ValueError("n_rows needed for a matrix with no columns")
            return cls(tuple(() for _ in range(n_rows)), 0)
        n = len(cols[0])
        if n_rows is not None and n_rows != n:
            raise DimensionMismatch("column length does not match n_rows")
        if any(len(c) != n for c in cols):
            raise DimensionMismatch("columns of different lengths")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(n)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, entries) -> "IntMatrix":
        entries = list(entries)
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.n_cols)]

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(tuple(tuple(r[j] for j in idx) for r in self.rows), len(idx))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(zip(*self.rows)) if self.n_cols else IntMatrix(((),))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            other.n_cols,
        )

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product; ``v`` may be rational."""
        if len(v) != self.n_cols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(dot(r, v) for r in self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def determinant(m) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = as_matrix(m)
    n = m.n_rows
    if m.n_cols != n:
        raise DimensionMismatch(f"determinant of non-square {m.shape} matrix")
    a = [list(r) for r in m.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


class _Echelon:
    """Incremental integer Gauss-Jordan basis.

    Rows are primitive integer vectors with a positive pivot entry and zeros
    in every other row's pivot column, so reducing a vector never
    reintroduces entries that were already cleared.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list[int]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        for p, r in self.rows.items():
            c = v[p]
            if c:
                rp = r[p]
                v = [rp * a - c * b for a, b in zip(v, r)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        """Insert an integer vector; returns False if it was dependent."""
        v = self.reduce(v)
        p = next((i for i, c in enumerate(v) if c), None)
        if p is None:
            return False
        v = primitive(v)
        if v[p] < 0:
            v = [-c for c in v]
        for q, r in self.rows.items():
            c = r[p]
            if c:
                self.rows[q] = _positive_primitive([v[p] * a - c * b for a, b in zip(r, v)], q)
        self.rows[p] = v
        return True

    def rref(self) -> tuple[tuple[Rational, ...], ...]:
        out = []
        for p in sorted(self.rows):
            r = self.rows[p]
            d = r[p]
            out.append(tuple(_norm(Fraction(c, d)) if c % d else c // d for c in r))
        return tuple(out)


def _positive_primitive(v: list[int], p: int) -> list[int]:
    v = primitive(v)
    return v if v[p] > 0 else [-c for c in v]


def _rank_of_vectors(vectors: Iterable[Sequence], n: int) -> int:
    ech = _Echelon(n)
    for v in vectors:
        ech.add(_integer_row(v))
        if len(ech) == n:
            break
    return len(ech)


def rank(m) -> int:
    """Exact rank over the rationals."""
    m = as_matrix(m)
    if m.n_cols == 0:
        return 0
    return _rank_of_vectors(m.rows, m.n_cols)


# ---------------------------------------------------------------------------
# unimodularity


def unimodularity_witness(m) -> tuple[tuple[int, ...], int] | None:
    """First ``n x n`` column subset (lexicographic) whose minor lies outside
    {0, +1, -1}, or ``((), 0)`` when the matrix is rank deficient, or None
    when the matrix is unimodular."""
    m = as_matrix(m)
    n = m.n_rows
    if rank(m) != n:
        return (), 0
    cols = m.columns()
    for sel in itertools.combinations(range(m.n_cols), n):
        d = determinant(IntMatrix.from_columns([cols[j] for j in sel]))
        if d not in (0, 1, -1):
            return sel, d
    return None


def is_unimodular(m) -> bool:
    return unimodularity_witness(m) is None


def _count_square_minors(r: int, c: int) -> int:
    return sum(math.comb(r, k) * math.comb(c, k) for k in range(1, min(r, c) + 1))


def total_unimodularity_witness(m, budget: Budget | None = None):
    """First square submatrix ``(rows, cols, det)`` with a determinant
    outside {0, +1, -1}; None if the matrix is totally unimodular."""
    m = as_matrix(m)
    budget = budget or default_budget()
    r, c = m.shape
    count = _count_square_minors(r, c)
    if count > budget.minors:
        raise SizeExceeded(f"{count} square minors exceed the budget of {budget.minors}")
    for i in range(r):
        for j in range(c):
            if m.rows[i][j] not in (0, 1, -1):
                return (i,), (j,), m.rows[i][j]
    for k in range(2, min(r, c) + 1):
        for rs in itertools.combinations(range(r), k):
            sub = [m.rows[i] for i in rs]
            for cs in itertools.combinations(range(c), k):
                d = determinant(IntMatrix(tuple(tuple(row[j] for j in cs) for row in sub)))
                if d not in (0, 1, -1):
                    return rs, cs, d
    return None


def is_totally_unimodular(m, budget: Budget | None = None) -> bool:
    return total_unimodularity_witness(m, budget) is None


# ---------------------------------------------------------------------------
# subspaces


@dataclasses.dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^n in reduced row-echelon form.

    ``basis`` rows have a leading 1 and zeros in every other row's pivot
    column, so two equal subspaces carry identical bases.
    """

    ambient_dim: int
    basis: tuple[tuple[Rational, ...], ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        ech = _Echelon(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
            ech.add(_integer_row(v))
            if len(ech) == ambient_dim:
                break
        return cls(ambient_dim, ech.rref())

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(b) if c) for b in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` against ``basis`` (meaningful only when
        ``v`` lies in the subspace)."""
        return tuple(v[p] for p in self.pivots)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        w = list(v)
        for p, b in zip(self.pivots, self.basis):
            c = w[p]
            if c:
                w = [x - c * y for x, y in zip(w, b)]
        return not any(w)

    __contains__ = contains

    def integer_basis(self) -> list[list[int]]:
        return [primitive(_integer_row(b)) for b in self.basis]

    def complement(self) -> "Subspace":
        """Orthogonal complement (null space of the basis matrix)."""
        n = self.ambient_dim
        piv = self.pivots
        free = [j for j in range(n) if j not in piv]
        vecs = []
        for f in free:
            v = [0] * n
            v[f] = 1
            for p, b in zip(piv, self.basis):
                v[p] = -b[f]
            vecs.append(v)
        return Subspace.span(vecs, n)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces in different ambient spaces")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces in different ambient spaces")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        return (self.complement() + other.complement()).complement()

    __and__ = intersect

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)


def span_of_columns(m, selection: Iterable[int] = ()) -> Subspace:
    m = as_matrix(m)
    return Subspace.span([m.column(j) for j in selection], m.n_rows)


def subspace_membership(s: Subspace, v: Sequence) -> bool:
    return s.contains(rvec(v))


def columns_inside_subspace(m, s: Subspace) -> tuple[int, ...]:
    m = as_matrix(m)
    if m.n_rows != s.ambient_dim:
        raise DimensionMismatch(f"matrix has {m.n_rows} rows, subspace lives in Q^{s.ambient_dim}")
    return tuple(j for j in range(m.n_cols) if s.contains(m.column(j)))


def extend_basis(m, fixed: Sequence[int], candidates: Iterable[int], target: Subspace) -> tuple[int, ...]:
    """Grow ``fixed`` into a column basis of ``target``.

    Candidates are scanned in ascending column order and kept whenever they
    are independent of what has been chosen so far.  The result lists the
    ``fixed`` indices first (in their given order) followed by the additions.
    """
    m = as_matrix(m)
    if m.n_rows != target.ambient_dim:
        raise DimensionMismatch(f"matrix has {m.n_rows} rows, subspace lives in Q^{target.ambient_dim}")
    ech = _Echelon(m.n_rows)
    chosen = list(fixed)
    for j in chosen:
        col = m.column(j)
        if not target.contains(col):
            raise ValueError(f"fixed column {j} is not inside the target subspace")
        if not ech.add(col):
            raise ValueError(f"fixed column {j} is dependent on the other fixed columns")
    for j in sorted(set(candidates) - set(chosen)):
        if len(ech) == target.dim:
            break
        col = m.column(j)
        if not target.contains(col):
            raise ValueError(f"candidate column {j} is not inside the target subspace")
        if ech.add(col):
            chosen.append(j)
    if len(ech) != target.dim:
        raise SpanFailure(
            f"columns span only a {len(ech)}-dimensional part of a {target.dim}-dimensional subspace"
        )
    return tuple(chosen)


def solve_in_basis(basis, d: Sequence) -> tuple:
    """Unique ``lam`` with ``basis @ lam == d`` (Gauss-Jordan over Q)."""
    basis = as_matrix(basis)
    n = basis.n_rows
    if basis.n_cols != n:
        raise DimensionMismatch(f"basis matrix {basis.shape} is not square")
    if len(d) != n:
        raise DimensionMismatch("right-hand side has the wrong length")
    a = [[Fraction(c) for c in row] + [Fraction(rational(x))] for row, x in zip(basis.rows, d)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularBasis("basis columns are linearly dependent")
        a[k], a[piv] = a[piv], a[k]
        pk = a[k][k]
        a[k] = [c / pk for c in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(_norm(row[n]) for row in a)
