"""Finitely generated modules over chain rings, at finite precision.

The rings are truncations K[x]/(x^N) (the precision-N model of the power
series ring) and the skew variant D_sigma[x]/(x^N) over the rational
quaternions, with x * a = sigma(a) * x.  A presentation is a relations
matrix over the ring; ``diagonalize`` produces an equivalent diagonal matrix
of x-powers together with invertible transforms and their explicit inverses,
which realizes the free (+) cyclic-torsion decomposition and the torsion
splitting projector.

Every series carries an exactness bit: it is set while the stored
coefficients determine the element of the untruncated ring (no nonzero
coefficient has ever been dropped past the precision).  Decisions that treat
an inexact series as zero mark their result precision-limited instead of
silently committing to the truncation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .constructors import QuatElem, sigma_power
from .errors import (
    DimensionMismatchError,
    PreconditionError,
    StructuralError,
)
from .exactla import Field, QQ, Subspace

COMMUTATIVE = "commutative"
QUATERNION = "quaternion"


@dataclass(frozen=True)
class AtLeastPrecision:
    """Valuation outcome for a series with no visible nonzero coefficient."""

    precision: int

    def __repr__(self):
        return f"AtLeastPrecision({self.precision})"


@dataclass(frozen=True)
class SeriesRing:
    """Coefficient arithmetic and precision for one truncated series ring."""

    kind: str
    field: Field
    precision: int

    def __post_init__(self):
        if self.kind not in (COMMUTATIVE, QUATERNION):
            raise PreconditionError(f"unknown ring kind {self.kind!r}")
        if self.kind == QUATERNION and not self.field.is_rationals:
            raise PreconditionError("the skew quaternion ring is defined over Q")
        if self.precision < 1:
            raise PreconditionError("precision must be at least 1")

    @staticmethod
    def commutative(field: Field, precision: int) -> "SeriesRing":
        return SeriesRing(COMMUTATIVE, field, precision)

    @staticmethod
    def quaternion(precision: int) -> "SeriesRing":
        return SeriesRing(QUATERNION, QQ, precision)

    # Coefficient operations; commutative coefficients are field scalars,
    # skew coefficients are quaternions.
    @property
    def residue_dim(self) -> int:
        return 4 if self.kind == QUATERNION else 1

    def czero(self):
        return QuatElem.of() if self.kind == QUATERNION else self.field.zero

    def cone(self):
        return QuatElem.of(1) if self.kind == QUATERNION else self.field.one

    def cof(self, value):
        if self.kind == QUATERNION:
            if isinstance(value, QuatElem):
                return value
            if isinstance(value, (list, tuple)) and len(value) == 4:
                return QuatElem.of(*[QQ.of(x) for x in value])
            return QuatElem.of(QQ.of(value))
        return self.field.of(value)

    def cadd(self, a, b):
        return a.add(b) if self.kind == QUATERNION else self.field.add(a, b)

    def csub(self, a, b):
        return a.sub(b) if self.kind == QUATERNION else self.field.sub(a, b)

    def cneg(self, a):
        return a.neg() if self.kind == QUATERNION else self.field.neg(a)

    def cmul(self, a, b):
        return a.mul(b) if self.kind == QUATERNION else self.field.mul(a, b)

    def cinv(self, a):
        return a.inverse() if self.kind == QUATERNION else self.field.inv(a)

    def cis_zero(self, a) -> bool:
        return a.is_zero() if self.kind == QUATERNION else a == 0

    def ctwist(self, a, k: int):
        """sigma^k on a coefficient; the identity in the commutative case."""
        return sigma_power(a, k % 3) if self.kind == QUATERNION else a

    def coeff_to_kvec(self, a) -> tuple:
        return a.coeffs if self.kind == QUATERNION else (a,)

    # Series builders.
    def series(self, coeffs: Sequence, exact: bool = True) -> "TruncSeries":
        coeffs = [self.cof(x) for x in coeffs]
        if len(coeffs) > self.precision:
            raise PreconditionError("more coefficients than the precision allows")
        coeffs += [self.czero()] * (self.precision - len(coeffs))
        return TruncSeries(self, tuple(coeffs), exact)

    def zero(self) -> "TruncSeries":
        return self.series([])

    def one(self) -> "TruncSeries":
        return self.series([self.cone()])

    def x_power(self, k: int) -> "TruncSeries":
        if k >= self.precision:
            raise PreconditionError("x power at or beyond the precision")
        coeffs = [self.czero()] * (k + 1)
        coeffs[k] = self.cone()
        return self.series(coeffs)


ValuationResult = Union[int, AtLeastPrecision]


@dataclass(frozen=True)
class TruncSeries:
    """Element of a truncated series ring, with an exactness bit."""

    ring: SeriesRing
    coeffs: tuple
    exact: bool = True

    def _same_ring(self, other: "TruncSeries") -> None:
        if self.ring != other.ring:
            raise DimensionMismatchError("series from different rings")

    def is_zero_at_precision(self) -> bool:
        return all(self.ring.cis_zero(c) for c in self.coeffs)

    def add(self, other: "TruncSeries") -> "TruncSeries":
        self._same_ring(other)
        r = self.ring
        coeffs = tuple(r.cadd(a, b) for a, b in zip(self.coeffs, other.coeffs))
        return TruncSeries(r, coeffs, self.exact and other.exact)

    def sub(self, other: "TruncSeries") -> "TruncSeries":
        self._same_ring(other)
        r = self.ring
        coeffs = tuple(r.csub(a, b) for a, b in zip(self.coeffs, other.coeffs))
        return TruncSeries(r, coeffs, self.exact and other.exact)

    def neg(self) -> "TruncSeries":
        r = self.ring
        return TruncSeries(r, tuple(r.cneg(a) for a in self.coeffs), self.exact)

    def mul(self, other: "TruncSeries") -> "TruncSeries":
        """Product with the skew rule x * a = sigma(a) * x.

        Term by term, (a_i x^i)(b_j x^j) = a_i sigma^i(b_j) x^(i+j); any
        nonzero coefficient landing at or past the precision is dropped and
        clears the exactness bit.
        """
        self._same_ring(other)
        r = self.ring
        n = r.precision
        out = [r.czero()] * n
        dropped = False
        for i, a in enumerate(self.coeffs):
            if r.cis_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if r.cis_zero(b):
                    continue
                c = r.cmul(a, r.ctwist(b, i))
                k = i + j
                if k < n:
                    out[k] = r.cadd(out[k], c)
                elif not r.cis_zero(c):
                    dropped = True
        exact = self.exact and other.exact and not dropped
        return TruncSeries(r, tuple(out), exact)

    def valuation(self) -> ValuationResult:
        for i, c in enumerate(self.coeffs):
            if not self.ring.cis_zero(c):
                return i
        return AtLeastPrecision(self.ring.precision)

    def is_unit(self) -> bool:
        return not self.ring.cis_zero(self.coeffs[0])

    def shift_down(self, l: int) -> "TruncSeries":
        """Divide by x^l on the right: series g with g * x^l = self.

        Requires valuation at least l.  The freed trailing positions are
        genuinely zero exactly when the input was exact.
        """
        r = self.ring
        if any(not r.cis_zero(c) for c in self.coeffs[:l]):
            raise PreconditionError("valuation below the requested shift")
        coeffs = list(self.coeffs[l:]) + [r.czero()] * l
        return TruncSeries(r, tuple(coeffs), self.exact)

    def twisted_shift_down(self, l: int) -> "TruncSeries":
        """Divide by x^l on the left: series q with x^l * q = self."""
        r = self.ring
        if any(not r.cis_zero(c) for c in self.coeffs[:l]):
            raise PreconditionError("valuation below the requested shift")
        coeffs = [r.ctwist(c, -l) for c in self.coeffs[l:]] + [r.czero()] * l
        return TruncSeries(r, tuple(coeffs), self.exact)

    def to_kvec(self) -> tuple:
        out = []
        for c in self.coeffs:
            out.extend(self.ring.coeff_to_kvec(c))
        return tuple(out)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not self.ring.cis_zero(c):
                parts.append(str(c) if i == 0 else f"({c})x^{i}")
        text = " + ".join(parts) if parts else "0"
        return text + ("" if self.exact else " [inexact]")


def valuation(s: TruncSeries) -> ValuationResult:
    """Smallest index with a nonzero coefficient, or AtLeastPrecision."""
    return s.valuation()


def unit_factor(s: TruncSeries) -> tuple:
    """Factor s = g * x^l with g a unit; errors on zero-at-precision input.

    The right factor x^l commutes past the unit's coefficients without a
    twist, so g is the plain downward shift of s by its valuation.
    """
    val = s.valuation()
    if isinstance(val, AtLeastPrecision):
        raise PreconditionError("cannot factor a series that vanishes at this precision")
    return s.shift_down(val), val


def series_inverse(s: TruncSeries) -> TruncSeries:
    """Two-sided inverse of a unit, by the geometric series on 1 + nilpotent."""
    if not s.is_unit():
        raise PreconditionError("only valuation-zero series invert")
    r = s.ring
    c0_inv = r.cinv(s.coeffs[0])
    c0_inv_series = r.series([c0_inv])
    # s = c0 (1 + n) with n = c0^{-1}(s - c0); invert the unipotent part.
    n_series = c0_inv_series.mul(s).sub(r.one())
    total = r.one()
    term = r.one()
    for _ in range(r.precision - 1):
        term = term.mul(n_series.neg())
        if term.is_zero_at_precision() and term.exact:
            break
        total = total.add(term)
    result = total.mul(c0_inv_series)
    if not s.exact:
        result = TruncSeries(r, result.coeffs, False)
    return result


@dataclass(frozen=True)
class Presentation:
    """Module presentation R^g / (left row space of the relations matrix)."""

    ring: SeriesRing
    generators: int
    relations: tuple

    @staticmethod
    def create(ring: SeriesRing, generators: int, relations) -> "Presentation":
        rows = []
        for row in relations:
            row = tuple(row)
            if len(row) != generators:
                raise StructuralError("relation row has wrong length")
            for entry in row:
                if not isinstance(entry, TruncSeries) or entry.ring != ring:
                    raise StructuralError("relation entries must be series of the same ring")
            rows.append(row)
        return Presentation(ring, generators, tuple(rows))

    @staticmethod
    def from_coefficient_rows(ring: SeriesRing, generators: int, rows) -> "Presentation":
        relations = [
            tuple(ring.series(entry) for entry in row) for row in rows
        ]
        return Presentation.create(ring, generators, relations)

    @property
    def rows(self) -> int:
        return len(self.relations)


def default_precision(coefficient_rows) -> int:
    """Twice the maximal entry degree plus four: enough for exact verdicts
    on polynomial inputs, since pivot valuations never exceed the input
    degrees."""
    from fractions import Fraction

    def coeff_nonzero(c):
        if isinstance(c, (list, tuple)):
            return any(coeff_nonzero(x) for x in c)
        if isinstance(c, str):
            return Fraction(c) != 0
        return c != 0

    max_deg = 0
    for row in coefficient_rows:
        for entry in row:
            for i, c in enumerate(entry):
                if coeff_nonzero(c):
                    max_deg = max(max_deg, i)
    return 2 * max_deg + 4


def _mat_identity(ring: SeriesRing, n: int):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def mat_mul(ring: SeriesRing, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ring.zero()
            for k in range(inner):
                acc = acc.add(a[i][k].mul(b[k][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_eq_at_precision(a, b) -> bool:
    return all(
        x.coeffs == y.coeffs for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def mat_is_identity(ring: SeriesRing, a) -> bool:
    return mat_eq_at_precision(a, _mat_identity(ring, len(a)))


@dataclass(frozen=True)
class Decomposition:
    """Diagonal certificate U A V = D realizing free (+) torsion.

    ``pivot_valuations`` lists the diagonal x-power exponents in order;
    exponent 0 entries are units and remove a generator, positive exponents
    k contribute cyclic torsion R/(x^k), and pivotless columns are free.
    """

    presentation: Presentation
    free_rank: int
    torsion_exponents: tuple
    pivot_valuations: tuple
    diagonal: tuple
    left_transform: tuple
    left_inverse: tuple
    right_transform: tuple
    right_inverse: tuple
    precision_limited: bool

    @property
    def ring(self) -> SeriesRing:
        return self.presentation.ring


def diagonalize(p: Presentation, tie_break_seed: Optional[int] = None) -> Decomposition:
    """Diagonalize the relations matrix over the chain ring.

    Pivot selection is minimal valuation with lexicographic (row, col)
    tie-break; a seeded tie-break can be supplied to exercise invariance of
    the decomposition.  The result is marked precision-limited whenever a
    zero-at-precision entry whose exactness bit is cleared was treated as
    zero, which is the only point where the truncation could diverge from
    the untruncated ring.
    """
    ring = p.ring
    r, g = p.rows, p.generators
    a = [[entry for entry in row] for row in p.relations]
    u = _mat_identity(ring, r)
    u_inv = _mat_identity(ring, r)
    v = _mat_identity(ring, g)
    v_inv = _mat_identity(ring, g)
    rng = random.Random(tie_break_seed) if tie_break_seed is not None else None
    precision_limited = False

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def scale_row(i, w, w_inv):
        a[i] = [w.mul(entry) for entry in a[i]]
        u[i] = [w.mul(entry) for entry in u[i]]
        for row in u_inv:
            row[i] = row[i].mul(w_inv)

    def add_row(target, source, q):
        # row_target += q * row_source on A and U; inverse column op on Uinv.
        a[target] = [x.add(q.mul(y)) for x, y in zip(a[target], a[source])]
        u[target] = [x.add(q.mul(y)) for x, y in zip(u[target], u[source])]
        for row in u_inv:
            row[source] = row[source].sub(row[target].mul(q))

    def add_col(target, source, q):
        # col_target += col_source * q on A and V; inverse row op on Vinv.
        for row in a:
            row[target] = row[target].add(row[source].mul(q))
        for row in v:
            row[target] = row[target].add(row[source].mul(q))
        v_inv[source] = [x.sub(q.mul(y)) for x, y in zip(v_inv[source], v_inv[target])]

    pivot_vals = []
    s = 0
    limit = min(r, g)
    while s < limit:
        candidates = []
        best_val = None
        for i in range(s, r):
            for j in range(s, g):
                val = a[i][j].valuation()
                if isinstance(val, AtLeastPrecision):
                    continue
                if best_val is None or val < best_val:
                    best_val = val
                    candidates = [(i, j)]
                elif val == best_val:
                    candidates.append((i, j))
        if best_val is None:
            break
        pick = rng.choice(candidates) if rng is not None else candidates[0]
        i, j = pick
        if i != s:
            swap_rows(s, i)
        if j != s:
            swap_cols(s, j)
        pivot_entry = a[s][s]
        unit, l = unit_factor(pivot_entry)
        scale_row(s, series_inverse(unit), unit)
        # The scaled pivot is exactly x^l in the untruncated ring whenever
        # the original entry was exact; record that instead of the
        # conservative bit the inverse multiplication would leave.
        a[s][s] = TruncSeries(ring, ring.x_power(l).coeffs, pivot_entry.exact)
        for t in range(r):
            if t == s:
                continue
            entry = a[t][s]
            if entry.is_zero_at_precision():
                if not entry.exact:
                    precision_limited = True
                continue
            q = entry.shift_down(l)
            add_row(t, s, q.neg())
            # entry = q * x^l exactly for exact entries (plain coefficient
            # shift), so the cleared position is an exact zero then.
            a[t][s] = TruncSeries(ring, ring.zero().coeffs, entry.exact)
        for c in range(g):
            if c == s:
                continue
            entry = a[s][c]
            if entry.is_zero_at_precision():
                if not entry.exact:
                    precision_limited = True
                continue
            q = entry.twisted_shift_down(l)
            add_col(c, s, q.neg())
            a[s][c] = TruncSeries(ring, ring.zero().coeffs, entry.exact)
        pivot_vals.append(l)
        s += 1
    # Whatever remains is zero at this precision; flag inexact leftovers.
    for i in range(r):
        for j in range(g):
            if (i >= s or j >= s or i != j) and a[i][j].is_zero_at_precision() and not a[i][j].exact:
                precision_limited = True
    free_rank = g - len(pivot_vals)
    exponents = tuple(sorted((l for l in pivot_vals if l > 0), reverse=True))
    return Decomposition(
        presentation=p,
        free_rank=free_rank,
        torsion_exponents=exponents,
        pivot_valuations=tuple(pivot_vals),
        diagonal=tuple(tuple(row) for row in a),
        left_transform=tuple(tuple(row) for row in u),
        left_inverse=tuple(tuple(row) for row in u_inv),
        right_transform=tuple(tuple(row) for row in v),
        right_inverse=tuple(tuple(row) for row in v_inv),
        precision_limited=precision_limited,
    )


@dataclass(frozen=True)
class TorsionReport:
    """Torsion content of a decomposition.

    Every torsion summand R/(x^k) has finite K-dimension k * residue_dim,
    which is what makes the torsion part the rational part of the module;
    the free summands are torsion-free.
    """

    exponents: tuple
    torsion_dim: int
    residue_dim: int
    free_rank: int
    torsion_is_rational: bool = True


def torsion_part(d: Decomposition) -> TorsionReport:
    residue = d.ring.residue_dim
    return TorsionReport(
        exponents=d.torsion_exponents,
        torsion_dim=residue * sum(d.torsion_exponents),
        residue_dim=residue,
        free_rank=d.free_rank,
    )


@dataclass(frozen=True)
class SplitCertificate:
    """Idempotent projector onto the torsion part of the presented module.

    The projector acts on row vectors of R^g on the right and descends to
    the quotient; its image is the torsion part and its kernel the free
    complement spanned by the pivotless transformed generators.
    """

    projector: tuple
    idempotent_verified: bool
    torsion_generators: tuple
    free_generators: tuple
    precision_limited: bool


def split_certificate(p: Presentation, d: Decomposition) -> SplitCertificate:
    if d.presentation is not p and d.presentation != p:
        raise PreconditionError("decomposition does not belong to this presentation")
    ring = p.ring
    g = p.generators
    torsion_cols = [
        idx for idx, l in enumerate(d.pivot_valuations) if l > 0
    ]
    free_cols = list(range(len(d.pivot_valuations), g))
    selector = _mat_identity(ring, g)
    for idx in range(g):
        if idx not in torsion_cols:
            selector[idx][idx] = ring.zero()
    v = [list(row) for row in d.right_transform]
    v_inv = [list(row) for row in d.right_inverse]
    projector = mat_mul(ring, mat_mul(ring, v, selector), v_inv)
    idempotent = mat_eq_at_precision(mat_mul(ring, projector, projector), projector)
    torsion_gens = tuple(tuple(d.right_inverse[c]) for c in torsion_cols)
    free_gens = tuple(tuple(d.right_inverse[c]) for c in free_cols)
    return SplitCertificate(
        projector=tuple(tuple(row) for row in projector),
        idempotent_verified=idempotent,
        torsion_generators=torsion_gens,
        free_generators=free_gens,
        precision_limited=d.precision_limited,
    )


def relations_kspan(p: Presentation, precision: Optional[int] = None) -> Subspace:
    """K-linear span of x^m * (relation rows) inside R^g, as flat vectors."""
    ring = p.ring if precision is None else SeriesRing(p.ring.kind, p.ring.field, precision)
    vectors = []
    width = p.generators * ring.precision * ring.residue_dim
    for row in p.relations:
        lifted = [_reprecision(entry, ring) for entry in row]
        for m in range(ring.precision):
            shifted = [ring.x_power(m).mul(entry) if m else entry for entry in lifted]
            vectors.append(_flatten_row(shifted))
    return Subspace.from_vectors(ring.field, width, vectors)


def _reprecision(s: TruncSeries, ring: SeriesRing) -> TruncSeries:
    if ring == s.ring:
        return s
    if not s.exact and ring.precision > s.ring.precision:
        raise PreconditionError("cannot widen an inexact series")
    coeffs = list(s.coeffs[: ring.precision])
    coeffs += [ring.czero()] * (ring.precision - len(coeffs))
    return TruncSeries(ring, tuple(coeffs), s.exact)


def _flatten_row(entries) -> tuple:
    out = []
    for entry in entries:
        out.extend(entry.to_kvec())
    return tuple(out)


@dataclass(frozen=True)
class TorsionVerdict:
    torsion: bool
    annihilator_valuation: Optional[int]
    precision_limited: bool

    def __bool__(self):
        return self.torsion


def is_torsion_element(p: Presentation, v: Sequence[TruncSeries]) -> TorsionVerdict:
    """Decide whether the class of v is annihilated by a nonzero ring element.

    Unit factors reduce any candidate annihilator to a power of x, so the
    decision is a linear-system membership over K at the ring precision:
    does x^m * v fall in the K-span of the shifted relation rows for some
    m below the precision.  The zero class is torsion by convention.  A
    positive verdict whose witnessing product dropped coefficients past the
    precision is flagged precision-limited.
    """
    ring = p.ring
    v = tuple(v)
    if len(v) != p.generators:
        raise DimensionMismatchError("element has wrong number of coordinates")
    span = relations_kspan(p)
    for m in range(ring.precision):
        shifted = [ring.x_power(m).mul(entry) if m else entry for entry in v]
        if span.contains_vector(_flatten_row(shifted)):
            flagged = any(not s.exact for s in shifted)
            return TorsionVerdict(True, m, flagged)
    return TorsionVerdict(False, None, any(not s.exact for s in v))


def transform_coordinates(d: Decomposition, v: Sequence[TruncSeries]) -> tuple:
    """Coordinates of v with respect to the diagonalized generators: v @ V."""
    ring = d.ring
    row = [list(v)]
    return tuple(mat_mul(ring, row, [list(r) for r in d.right_transform])[0])


def free_coordinates_vanish(d: Decomposition, v: Sequence[TruncSeries]) -> bool:
    """Torsion criterion in transformed coordinates: pivotless and unit-free
    columns carry the free part, and the class of v is torsion iff those
    coordinates vanish."""
    transformed = transform_coordinates(d, v)
    free_cols = range(len(d.pivot_valuations), d.presentation.generators)
    return all(transformed[c].is_zero_at_precision() for c in free_cols)
