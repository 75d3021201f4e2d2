"""Exact linear algebra over the rationals and prime fields GF(p).

Scalars are ``fractions.Fraction`` values over the rationals (always in lowest
terms with positive denominator) and canonical integers in ``range(p)`` over
GF(p).  No floating point is used anywhere; every comparison is exact.

Matrices and subspaces are immutable.  A :class:`Subspace` stores its basis in
reduced row-echelon form, so equality of subspaces is equality of
representations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    PreconditionError,
    StructuralError,
)

Scalar = Union[Fraction, int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field GF(p)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")

    @staticmethod
    def rationals() -> "Field":
        return Field(None)

    @staticmethod
    def gf(p: int) -> "Field":
        return Field(p)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def of(self, value) -> Scalar:
        """Coerce an int, string, or Fraction into a canonical scalar."""
        if isinstance(value, float):
            raise PreconditionError("floating point values are not accepted")
        if self.p is None:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, (int, str)):
                return Fraction(value)
            raise PreconditionError(f"cannot coerce {value!r} into a rational")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise PreconditionError(f"{value} is not an integer mod {self.p}")
            value = value.numerator
        if isinstance(value, str):
            value = int(value)
        if not isinstance(value, int):
            raise PreconditionError(f"cannot coerce {value!r} into GF({self.p})")
        return value % self.p

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / a
        return pow(a, self.p - 2, self.p)

    def to_str(self, a: Scalar) -> str:
        return str(a)

    def __repr__(self):
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field.rationals()


def _check_same_field(a: "Matrix", b: "Matrix") -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"fields differ: {a.field} vs {b.field}")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a single field, row-major."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(field: Field, rows_data: Iterable[Iterable], cols: Optional[int] = None) -> "Matrix":
        data = [tuple(field.of(x) for x in row) for row in rows_data]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise StructuralError("ragged rows in matrix input")
            if cols is not None and cols != width:
                raise DimensionMismatchError(f"expected {cols} columns, got {width}")
            cols = width
        elif cols is None:
            raise StructuralError("empty matrix needs an explicit column count")
        return Matrix(field, len(data), cols, tuple(data))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return Matrix(field, n, n, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        zero = field.zero
        return Matrix(field, rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def matmul(self, other: "Matrix") -> "Matrix":
        _check_same_field(self, other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            row = []
            for j in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    a = ri[k]
                    if a != 0:
                        acc = f.add(acc, f.mul(a, other.entries[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def add(self, other: "Matrix") -> "Matrix":
        _check_same_field(self, other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix shapes differ")
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        c = f.of(c)
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.mul(c, a) for a in row) for row in self.entries))

    def stack(self, other: "Matrix") -> "Matrix":
        _check_same_field(self, other)
        if self.cols != other.cols:
            raise DimensionMismatchError("column counts differ")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.entries)

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise DimensionMismatchError("trace of a non-square matrix")
        acc = self.field.zero
        for i in range(self.rows):
            acc = self.field.add(acc, self.entries[i][i])
        return acc

    def apply_row(self, v: Sequence[Scalar]) -> tuple:
        """Row vector times matrix: returns v @ self."""
        if len(v) != self.rows:
            raise DimensionMismatchError("vector length does not match row count")
        f = self.field
        out = [f.zero] * self.cols
        for i, vi in enumerate(v):
            if vi != 0:
                ri = self.entries[i]
                for j in range(self.cols):
                    a = ri[j]
                    if a != 0:
                        out[j] = f.add(out[j], f.mul(vi, a))
        return tuple(out)


def _pivot_score(field: Field, a: Scalar) -> int:
    # Over Q prefer the entry of smallest numerator*denominator bit size
    # to curb coefficient growth; the score is irrelevant over GF(p).
    if field.is_rationals:
        return (abs(a.numerator) * a.denominator).bit_length()
    return 0


def rref(m: Matrix) -> tuple:
    """Reduced row-echelon form of ``m`` and its rank.

    Pivot choice: leftmost nonzero column; among candidate rows, over Q the
    entry with the smallest bit size wins (ties to the topmost row), over
    GF(p) the topmost nonzero entry wins.
    """
    f = m.field
    work = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        best = None
        for r in range(pivot_row, nrows):
            a = work[r][col]
            if a != 0:
                score = _pivot_score(f, a)
                if best is None or score < best[0]:
                    best = (score, r)
        if best is None:
            continue
        r = best[1]
        if r != pivot_row:
            work[pivot_row], work[r] = work[r], work[pivot_row]
        inv = f.inv(work[pivot_row][col])
        if inv != 1:
            work[pivot_row] = [f.mul(inv, a) for a in work[pivot_row]]
        prow = work[pivot_row]
        for r2 in range(nrows):
            if r2 == pivot_row:
                continue
            c = work[r2][col]
            if c != 0:
                work[r2] = [f.sub(a, f.mul(c, b)) for a, b in zip(work[r2], prow)]
        pivot_row += 1
    reduced = Matrix(f, nrows, ncols, tuple(tuple(row) for row in work))
    return reduced, pivot_row


def _pivot_columns(reduced: Matrix, rank: int) -> list:
    pivots = []
    for r in range(rank):
        row = reduced.entries[r]
        for c, a in enumerate(row):
            if a != 0:
                pivots.append(c)
                break
    return pivots


def kernel(m: Matrix) -> "Subspace":
    """Right kernel { v : m @ v = 0 } as a canonical subspace of K^cols."""
    f = m.field
    reduced, rank = rref(m)
    pivots = _pivot_columns(reduced, rank)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(reduced.entries[r][fc])
        vectors.append(v)
    return Subspace.from_vectors(f, m.cols, vectors)


def left_kernel(m: Matrix) -> "Subspace":
    """Left kernel { v : v @ m = 0 } as a subspace of K^rows."""
    return kernel(m.transpose())


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of K^n held by a reduced row-echelon basis."""

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatchError("basis width does not match ambient dimension")

    @staticmethod
    def from_vectors(field: Field, ambient_dim: int, vectors: Iterable[Iterable]) -> "Subspace":
        mat = Matrix.from_rows(field, vectors, cols=ambient_dim)
        reduced, rank = rref(mat)
        return Subspace(ambient_dim, Matrix(field, rank, ambient_dim, reduced.entries[:rank]))

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix(field, 0, ambient_dim, ()))

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def pivots(self) -> list:
        return _pivot_columns(self.basis, self.basis.rows)

    def reduce(self, vector: Sequence) -> tuple:
        """Residual of ``vector`` after elimination against the basis."""
        f = self.field
        v = [f.of(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector length does not match ambient dimension")
        for r, pc in enumerate(self.pivots()):
            c = v[pc]
            if c != 0:
                row = self.basis.entries[r]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vector: Sequence) -> bool:
        return all(a == 0 for a in self.reduce(vector))

    def coords_of(self, vector: Sequence):
        """Coefficients of ``vector`` on the basis rows, or None if outside."""
        f = self.field
        v = [f.of(x) for x in vector]
        coords = []
        for r, pc in enumerate(self.pivots()):
            c = v[pc]
            coords.append(c)
            if c != 0:
                row = self.basis.entries[r]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        if any(a != 0 for a in v):
            return None
        return tuple(coords)


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    if a.field != b.field:
        raise FieldMismatchError("subspaces live over different fields")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return Subspace.from_vectors(a.field, a.ambient_dim, a.basis.entries + b.basis.entries)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked-basis relation matrix."""
    _check_compatible(a, b)
    if a.is_zero() or b.is_zero():
        return Subspace.zero(a.field, a.ambient_dim)
    stacked = a.basis.stack(b.basis)
    relations = left_kernel(stacked)
    vectors = []
    for rel in relations.basis.entries:
        u = rel[:a.dim]
        vectors.append(a.basis.apply_row(u) if a.dim else tuple())
    return Subspace.from_vectors(a.field, a.ambient_dim, vectors)


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff a contains b, i.e. sum(a, b) = a."""
    _check_compatible(a, b)
    return all(a.contains_vector(row) for row in b.basis.entries)


def perp(w: Subspace) -> Subspace:
    """Annihilator { f : f(x) = 0 for all x in w } in the dual coordinates."""
    if w.is_zero():
        return Subspace.full(w.field, w.ambient_dim)
    return kernel(w.basis)
