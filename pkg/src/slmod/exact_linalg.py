"""Exact rational linear algebra with canonical row-echelon subspaces.

Scalars are arbitrary-precision rationals (``fractions.Fraction``); plain
``int`` entries are accepted anywhere a rational is expected.  A ``Subspace``
of Q^n is stored in a canonical form, so two subspaces are equal exactly when
their stored bases are identical entry for entry.

Internally every row is cleared to a primitive integer vector (coprime
entries, positive leading entry) and elimination is fraction-free: each row
update is a cross-multiplication followed by a gcd reduction, with pivots
normalized at the end.  The exposed ``Subspace.basis`` rescales rows so that
every pivot is 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Scalar = Fraction

Rational = Fraction | int


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# vectors


def vec(entries: Iterable[Rational]) -> tuple:
    return tuple(frac(x) for x in entries)


def dot(u: Sequence[Rational], v: Sequence[Rational]):
    if len(u) != len(v):
        raise ValueError(f"dot: length mismatch {len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# matrices (tuple of row tuples; rational entries)


def matrix(rows: Iterable[Iterable[Rational]]) -> tuple:
    out = tuple(tuple(r) for r in rows)
    if out:
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise ValueError("matrix rows must have equal length")
    return out


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(nrows: int, ncols: int) -> tuple:
    row = (0,) * ncols
    return tuple(row for _ in range(nrows))


def from_triplets(nrows: int, ncols: int, triplets: Iterable[tuple]) -> tuple:
    """Dense matrix from sparse (row, col, value) entries; duplicates add."""
    rows = [[0] * ncols for _ in range(nrows)]
    for i, j, v in triplets:
        rows[i][j] += v
    return matrix(rows)


def transpose(m) -> tuple:
    if not m:
        return ()
    return tuple(zip(*m))


def mat_vec(m, v) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b) -> tuple:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"mat_mul: inner dimensions {len(a[0])} != {len(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, m) -> tuple:
    return tuple(tuple(c * x for x in row) for row in m)


def flatten(m) -> tuple:
    return tuple(x for row in m for x in row)


# ---------------------------------------------------------------------------
# primitive integer row helpers


def _primitive(row: Sequence[int]) -> tuple[int, ...]:
    """Divide by the gcd and make the leading nonzero entry positive."""
    g = 0
    lead = 0
    for x in row:
        if x:
            if g == 0:
                lead = x
            g = gcd(g, x)
    if g == 0:
        return tuple(row)
    if lead < 0:
        g = -g
    return tuple(x // g for x in row)


def _int_row(row: Sequence[Rational]) -> list[int]:
    """Scale a rational row to integers (clearing denominators)."""
    denom = 1
    for x in row:
        if isinstance(x, Fraction):
            denom = lcm(denom, x.denominator)
    if denom == 1:
        return [int(x) for x in row]
    return [int(x * denom) for x in row]


def _reduce_row(vec_: list[int], rows, pivots) -> list[int]:
    """Eliminate ``vec_`` against echelon ``rows`` (sorted by pivot column)."""
    for row, p in zip(rows, pivots):
        b = vec_[p]
        if b:
            a = row[p]
            g = gcd(a, b)
            ma = a // g
            mb = b // g
            vec_ = [ma * x - mb * y for x, y in zip(vec_, row)]
    return vec_


def _lead(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def _echelon(rows: Iterable[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Full Gauss-Jordan over Z; returns primitive canonical rows and pivots."""
    work = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    if not work:
        return [], []
    ncols = len(work[0])
    nrows = len(work)
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, nrows):
            if work[i][col]:
                sel = i
                break
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        prow = list(_primitive(work[r]))
        work[r] = prow
        a = prow[col]
        for i in range(nrows):
            if i != r and work[i][col]:
                b = work[i][col]
                g = gcd(a, b)
                ma = a // g
                mb = b // g
                work[i] = list(_primitive([ma * x - mb * y for x, y in zip(work[i], prow)]))
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r):
        out.append(list(_primitive(work[i])))
    return [tuple(row) for row in out], pivots


class IntSpan:
    """Incrementally grown span of integer vectors (forward echelon only).

    Rows stay primitive and sorted by leading column; suitable for closure
    loops where many membership tests and single-vector inserts happen.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residual(self, vector: Sequence[int]) -> list[int]:
        return _reduce_row(list(vector), self.rows, self.pivots)

    def contains(self, vector: Sequence[int]) -> bool:
        return not any(self.residual(vector))

    def add(self, vector: Sequence[int]) -> bool:
        """Insert a vector; returns True when the span grew."""
        res = self.residual(vector)
        lead = _lead(res)
        if lead < 0:
            return False
        res = list(_primitive(res))
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < lead:
            pos += 1
        self.rows.insert(pos, res)
        self.pivots.insert(pos, lead)
        return True

    def add_many(self, vectors) -> bool:
        grew = False
        for v in vectors:
            grew |= self.add(v)
        return grew

    def to_subspace(self) -> "Subspace":
        return Subspace._from_int_rows(self.ambient, self.rows)


class Subspace:
    """A subspace of Q^n in canonical reduced-row-echelon form.

    The stored rows are primitive integer vectors, proportional to the unique
    pivot-1 reduced echelon basis.  ``basis`` exposes the pivot-1 form.
    """

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, rows: Iterable[Sequence[Rational]] = ()):
        canon, piv = _echelon([_int_row(r) for r in rows])
        for r in canon:
            if len(r) != ambient_dim:
                raise ValueError("subspace row length differs from ambient dimension")
        self.ambient_dim = ambient_dim
        self.rows = tuple(canon)
        self.pivots = tuple(piv)

    @classmethod
    def _from_int_rows(cls, ambient_dim: int, rows) -> "Subspace":
        obj = object.__new__(cls)
        canon, piv = _echelon(rows)
        obj.ambient_dim = ambient_dim
        obj.rows = tuple(canon)
        obj.pivots = tuple(piv)
        return obj

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> tuple:
        """Basis matrix in reduced row echelon form with pivot entries 1."""
        out = []
        for row, p in zip(self.rows, self.pivots):
            piv = row[p]
            out.append(tuple(Fraction(x, piv) for x in row))
        return tuple(out)

    def contains_vector(self, vector: Sequence[Rational]) -> bool:
        if len(vector) != self.ambient_dim:
            raise ValueError("vector length differs from ambient dimension")
        res = _reduce_row(_int_row(vector), self.rows, self.pivots)
        return not any(res)

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains_vector(r) for r in other.rows)

    def to_span(self) -> IntSpan:
        span = IntSpan(self.ambient_dim)
        span.rows = [list(r) for r in self.rows]
        span.pivots = list(self.pivots)
        return span

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, rows={self.rows})"


# ---------------------------------------------------------------------------
# operations


def rref(m) -> Subspace:
    """Canonical row space of a matrix."""
    m = matrix(m)
    if not m:
        raise ValueError("rref of an empty matrix has no ambient dimension")
    return Subspace(len(m[0]), m)


def rank(m) -> int:
    m = matrix(m)
    if not m:
        return 0
    rows, _ = _echelon([_int_row(r) for r in m])
    return len(rows)


def kernel(m) -> Subspace:
    """Canonical null space { v : m v = 0 }."""
    m = matrix(m)
    if not m:
        raise ValueError("kernel of an empty matrix has no ambient dimension")
    ncols = len(m[0])
    rows, pivots = _echelon([_int_row(r) for r in m])
    pivot_set = set(pivots)
    gens = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = Fraction(-row[free], row[p])
        gens.append(v)
    return Subspace(ncols, gens)


def image(m, s: Subspace | None = None) -> Subspace:
    """Canonical span of { m b : b basis vector of s } (s defaults to full)."""
    m = matrix(m)
    if not m:
        raise ValueError("image of an empty matrix has no ambient dimension")
    ncols = len(m[0])
    if s is None:
        cols = transpose(m)
        return Subspace(len(m), cols)
    if s.ambient_dim != ncols:
        raise ValueError(f"image: subspace ambient {s.ambient_dim} != matrix cols {ncols}")
    return Subspace(len(m), [mat_vec(m, row) for row in s.rows])


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace._from_int_rows(a.ambient_dim, list(a.rows) + list(b.rows))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked-basis coefficient system."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # Solve A^T u = B^T v: kernel of [A^T | -B^T], then map u back through A.
    stacked = []
    for i in range(a.ambient_dim):
        row = [r[i] for r in a.rows] + [-r[i] for r in b.rows]
        stacked.append(row)
    ker = kernel(stacked)
    gens = []
    for row in ker.rows:
        coeffs = row[: a.dim]
        v = [0] * a.ambient_dim
        for c, arow in zip(coeffs, a.rows):
            for j, x in enumerate(arow):
                v[j] += c * x
        gens.append(v)
    return Subspace(a.ambient_dim, gens)


def member(s: Subspace, vector: Sequence[Rational]) -> bool:
    return s.contains_vector(vector)
