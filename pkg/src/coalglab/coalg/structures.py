"""Coalgebra, finite-dimensional algebra, and comodule structures.

A coalgebra of dimension n over a field K is stored by its structure
constants: ``delta[i][j][k]`` is the coefficient of e_j (x) e_k in the
comultiplication of e_i, and ``eps[i]`` is the counit of e_i.  An algebra is
stored the same way: ``mult[i][j][k]`` is the coefficient of b_k in b_i * b_j,
together with the coordinates of the unit.  A right comodule of dimension m
stores ``rho[x][y][k]``, the coefficient of v_y (x) e_k in the coaction of v_x.

All values are immutable; every operation here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from ..errors import (
    DimensionMismatchError,
    InvalidAlgebraError,
    InvalidCoalgebraError,
    NotASubcomoduleError,
    StructuralError,
)
from ..exactla import Field, Matrix, Subspace, rref


def _normalize_tensor(fld: Field, dim_a: int, dim_b: int, dim_c: int, tensor) -> tuple:
    rows = tuple(tensor)
    if len(rows) != dim_a:
        raise StructuralError(f"tensor has {len(rows)} slices, expected {dim_a}")
    out = []
    for slice_ in rows:
        slice_ = tuple(slice_)
        if len(slice_) != dim_b:
            raise StructuralError("tensor slice has wrong shape")
        new_slice = []
        for row in slice_:
            row = tuple(fld.of(x) for x in row)
            if len(row) != dim_c:
                raise StructuralError("tensor row has wrong shape")
            new_slice.append(row)
        out.append(tuple(new_slice))
    return tuple(out)


def _normalize_vector(fld: Field, dim: int, vec) -> tuple:
    vec = tuple(fld.of(x) for x in vec)
    if len(vec) != dim:
        raise StructuralError(f"vector has length {len(vec)}, expected {dim}")
    return vec


def _tensor_nonzeros(tensor) -> list:
    """Nonzero entries of a structure tensor as (i, j, k, coeff) tuples."""
    out = []
    for i, slice_ in enumerate(tensor):
        for j, row in enumerate(slice_):
            for k, c in enumerate(row):
                if c != 0:
                    out.append((i, j, k, c))
    return out


@dataclass(frozen=True)
class Violation:
    """One failed structure-constant identity, with the offending indices."""

    kind: str
    indices: tuple
    lhs: str
    rhs: str

    def __str__(self):
        return f"{self.kind}{self.indices}: {self.lhs} != {self.rhs}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "valid"
        head = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        return head + (f"; and {more} more" if more > 0 else "")


@dataclass(frozen=True)
class Coalgebra:
    field: Field
    dim: int
    delta: tuple
    eps: tuple
    basis_names: Optional[tuple] = None
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def create(fld: Field, dim: int, delta, eps, basis_names=None) -> "Coalgebra":
        delta = _normalize_tensor(fld, dim, dim, dim, delta)
        eps = _normalize_vector(fld, dim, eps)
        if basis_names is not None:
            basis_names = tuple(str(x) for x in basis_names)
            if len(basis_names) != dim:
                raise StructuralError("basis_names length does not match dimension")
        return Coalgebra(fld, dim, delta, eps, basis_names)

    def name(self, i: int) -> str:
        return self.basis_names[i] if self.basis_names else f"e{i}"


@dataclass(frozen=True)
class FDAlgebra:
    field: Field
    dim: int
    mult: tuple
    unit: tuple
    basis_names: Optional[tuple] = None
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def create(fld: Field, dim: int, mult, unit, basis_names=None) -> "FDAlgebra":
        mult = _normalize_tensor(fld, dim, dim, dim, mult)
        unit = _normalize_vector(fld, dim, unit)
        if basis_names is not None:
            basis_names = tuple(str(x) for x in basis_names)
            if len(basis_names) != dim:
                raise StructuralError("basis_names length does not match dimension")
        return FDAlgebra(fld, dim, mult, unit, basis_names)

    def multiply(self, u: Sequence, v: Sequence) -> tuple:
        """Product of two coordinate vectors."""
        f = self.field
        out = [f.zero] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            slice_ = self.mult[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = f.mul(a, b)
                row = slice_[j]
                for k in range(self.dim):
                    c = row[k]
                    if c != 0:
                        out[k] = f.add(out[k], f.mul(ab, c))
        return tuple(out)

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i):
                if self.mult[i][j] != self.mult[j][i]:
                    return False
        return True


@dataclass(frozen=True)
class Comodule:
    """Right comodule over a coalgebra, given by coaction structure constants."""

    coalgebra: Coalgebra
    dim: int
    rho: tuple

    @staticmethod
    def create(c: Coalgebra, dim: int, rho) -> "Comodule":
        rho = _normalize_tensor(c.field, dim, dim, c.dim, rho)
        return Comodule(c, dim, rho)

    def action_matrix(self, functional: Sequence) -> Matrix:
        """Matrix of the dual-algebra action f.v = (id (x) f) rho(v).

        Rows index the source basis, so a row coordinate vector acts by right
        multiplication: coords(f.v) = coords(v) @ matrix.
        """
        f = self.coalgebra.field
        coeffs = [f.of(x) for x in functional]
        rows = []
        for x in range(self.dim):
            row = []
            for y in range(self.dim):
                acc = f.zero
                entry = self.rho[x][y]
                for t, ft in enumerate(coeffs):
                    if ft != 0 and entry[t] != 0:
                        acc = f.add(acc, f.mul(ft, entry[t]))
                row.append(acc)
            rows.append(tuple(row))
        return Matrix(f, self.dim, self.dim, tuple(rows))

    def basis_action_matrices(self) -> tuple:
        """Action matrices of the dual basis functionals E_0, ..., E_{n-1}."""
        f = self.coalgebra.field
        mats = []
        for t in range(self.coalgebra.dim):
            rows = tuple(
                tuple(self.rho[x][y][t] for y in range(self.dim))
                for x in range(self.dim)
            )
            mats.append(Matrix(f, self.dim, self.dim, rows))
        return tuple(mats)


def validate_coalgebra(c: Coalgebra) -> ValidationReport:
    """Check coassociativity and both counit identities exactly.

    The report lists every violated identity with its indices; it is empty
    iff the structure constants define a coalgebra.
    """
    cached = c._cache.get("validation")
    if cached is not None:
        return cached
    f = c.field
    violations = []
    nz = _tensor_nonzeros(c.delta)
    # Coassociativity, computed sparsely: both sides are coefficient maps
    # (i, j, k, l) -> scalar; compare their supports.
    lhs = {}
    for (i, j, t, a) in nz:
        row_t = c.delta[t]
        for k in range(c.dim):
            rk = row_t[k]
            for l in range(c.dim):
                b = rk[l]
                if b != 0:
                    key = (i, j, k, l)
                    lhs[key] = f.add(lhs.get(key, f.zero), f.mul(a, b))
    rhs = {}
    for (i, t, l, a) in nz:
        row_t = c.delta[t]
        for j in range(c.dim):
            rj = row_t[j]
            for k in range(c.dim):
                b = rj[k]
                if b != 0:
                    key = (i, j, k, l)
                    rhs[key] = f.add(rhs.get(key, f.zero), f.mul(a, b))
    for key in sorted(set(lhs) | set(rhs)):
        a = lhs.get(key, f.zero)
        b = rhs.get(key, f.zero)
        if a != b:
            violations.append(Violation("coassociativity", key, str(a), str(b)))
    # Counit identities.
    for i in range(c.dim):
        left = [f.zero] * c.dim
        right = [f.zero] * c.dim
        slice_ = c.delta[i]
        for j in range(c.dim):
            ej = c.eps[j]
            row = slice_[j]
            for k in range(c.dim):
                v = row[k]
                if v != 0:
                    if ej != 0:
                        left[k] = f.add(left[k], f.mul(ej, v))
                    if c.eps[k] != 0:
                        right[j] = f.add(right[j], f.mul(c.eps[k], v))
        for k in range(c.dim):
            want = f.one if k == i else f.zero
            if left[k] != want:
                violations.append(Violation("counit_left", (i, k), str(left[k]), str(want)))
            if right[k] != want:
                violations.append(Violation("counit_right", (i, k), str(right[k]), str(want)))
    report = ValidationReport(tuple(violations))
    c._cache["validation"] = report
    return report


def validate_algebra(a: FDAlgebra) -> ValidationReport:
    """Check associativity and the two-sided unit law exactly."""
    cached = a._cache.get("validation")
    if cached is not None:
        return cached
    f = a.field
    violations = []
    nz = _tensor_nonzeros(a.mult)
    lhs = {}
    for (i, j, t, c0) in nz:
        slice_t = a.mult[t]
        for k in range(a.dim):
            row = slice_t[k]
            for l in range(a.dim):
                c1 = row[l]
                if c1 != 0:
                    key = (i, j, k, l)
                    lhs[key] = f.add(lhs.get(key, f.zero), f.mul(c0, c1))
    rhs = {}
    for (j, k, t, c0) in nz:
        for i in range(a.dim):
            row = a.mult[i][t]
            for l in range(a.dim):
                c1 = row[l]
                if c1 != 0:
                    key = (i, j, k, l)
                    rhs[key] = f.add(rhs.get(key, f.zero), f.mul(c0, c1))
    for key in sorted(set(lhs) | set(rhs)):
        x = lhs.get(key, f.zero)
        y = rhs.get(key, f.zero)
        if x != y:
            violations.append(Violation("associativity", key, str(x), str(y)))
    for j in range(a.dim):
        left = a.multiply(a.unit, _unit_vec(f, a.dim, j))
        right = a.multiply(_unit_vec(f, a.dim, j), a.unit)
        for k in range(a.dim):
            want = f.one if k == j else f.zero
            if left[k] != want:
                violations.append(Violation("unit_left", (j, k), str(left[k]), str(want)))
            if right[k] != want:
                violations.append(Violation("unit_right", (j, k), str(right[k]), str(want)))
    report = ValidationReport(tuple(violations))
    a._cache["validation"] = report
    return report


def validate_comodule(m: Comodule) -> ValidationReport:
    """Check coaction coassociativity and the counit identity exactly.

    The coaction must satisfy (rho (x) id) rho = (id (x) delta) rho and
    (id (x) eps) rho = id as structure-constant contractions.
    """
    c = m.coalgebra
    f = c.field
    violations = []
    for x in range(m.dim):
        for z in range(m.dim):
            for l in range(c.dim):
                for k in range(c.dim):
                    lhs = f.zero
                    for y in range(m.dim):
                        a = m.rho[x][y][k]
                        b = m.rho[y][z][l]
                        if a != 0 and b != 0:
                            lhs = f.add(lhs, f.mul(a, b))
                    rhs = f.zero
                    for t in range(c.dim):
                        a = m.rho[x][z][t]
                        b = c.delta[t][l][k]
                        if a != 0 and b != 0:
                            rhs = f.add(rhs, f.mul(a, b))
                    if lhs != rhs:
                        violations.append(
                            Violation("coaction_coassociativity", (x, z, l, k), str(lhs), str(rhs)))
    for x in range(m.dim):
        for y in range(m.dim):
            acc = f.zero
            for k in range(c.dim):
                a = m.rho[x][y][k]
                if a != 0 and c.eps[k] != 0:
                    acc = f.add(acc, f.mul(a, c.eps[k]))
            want = f.one if x == y else f.zero
            if acc != want:
                violations.append(Violation("coaction_counit", (x, y), str(acc), str(want)))
    return ValidationReport(tuple(violations))


def _unit_vec(f: Field, n: int, i: int) -> tuple:
    return tuple(f.one if j == i else f.zero for j in range(n))


def require_valid_coalgebra(c: Coalgebra) -> None:
    report = validate_coalgebra(c)
    if not report.ok:
        raise InvalidCoalgebraError(report)


def require_valid_algebra(a: FDAlgebra) -> None:
    report = validate_algebra(a)
    if not report.ok:
        raise InvalidAlgebraError(report)


def dual_algebra(c: Coalgebra) -> FDAlgebra:
    """Convolution algebra on the dual basis: (E_i E_j)(e_k) = (E_i (x) E_j)(delta e_k).

    The unit is the counit vector.  Refuses invalid coalgebras.
    """
    require_valid_coalgebra(c)
    n = c.dim
    mult = tuple(
        tuple(tuple(c.delta[k][i][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    names = None
    if c.basis_names:
        names = tuple(f"{x}*" for x in c.basis_names)
    return FDAlgebra(c.field, n, mult, c.eps, names)


def co_opposite(c: Coalgebra) -> Coalgebra:
    """Coalgebra with the two tensor legs of the comultiplication swapped."""
    n = c.dim
    delta = tuple(
        tuple(tuple(c.delta[i][k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    return Coalgebra(c.field, n, delta, c.eps, c.basis_names)


def transport(c: Coalgebra, q: Matrix) -> Coalgebra:
    """Structure constants of c on the new basis f_i = sum_j q[i][j] e_j.

    ``q`` must be invertible; the result is isomorphic to ``c`` via the
    basis change.
    """
    if q.rows != c.dim or q.cols != c.dim:
        raise DimensionMismatchError("basis-change matrix has wrong shape")
    if q.field != c.field:
        raise DimensionMismatchError("basis-change matrix over the wrong field")
    f = c.field
    n = c.dim
    reduced, rank = rref(q)
    if rank != n:
        raise StructuralError("basis-change matrix is singular")
    r = _invert(q)
    nz = _tensor_nonzeros(c.delta)
    delta = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        row_q = q.entries[i]
        for (j, a, b, coeff) in nz:
            qij = row_q[j]
            if qij == 0:
                continue
            w = f.mul(qij, coeff)
            ra = r.entries[a]
            rb = r.entries[b]
            for s in range(n):
                if ra[s] == 0:
                    continue
                ws = f.mul(w, ra[s])
                for t in range(n):
                    if rb[t] != 0:
                        delta[i][s][t] = f.add(delta[i][s][t], f.mul(ws, rb[t]))
    eps = tuple(_dot(f, q.entries[i], c.eps) for i in range(n))
    return Coalgebra(f, n, tuple(tuple(tuple(row) for row in s) for s in delta), eps)


def _dot(f: Field, u, v):
    acc = f.zero
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc = f.add(acc, f.mul(a, b))
    return acc


def _invert(m: Matrix) -> Matrix:
    n = m.rows
    aug = Matrix(m.field, n, 2 * n, tuple(
        row + tuple(m.field.one if i == j else m.field.zero for j in range(n))
        for i, row in enumerate(m.entries)))
    reduced, rank = rref(aug)
    if rank != n or any(
        reduced.entries[i][i] != m.field.one for i in range(n)
    ):
        raise StructuralError("matrix is singular")
    return Matrix(m.field, n, n, tuple(row[n:] for row in reduced.entries))


def invert_matrix(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises StructuralError when singular."""
    if m.rows != m.cols:
        raise DimensionMismatchError("only square matrices invert")
    return _invert(m)


def regular_comodule(c: Coalgebra) -> Comodule:
    """The coalgebra as a right comodule over itself (coaction = delta)."""
    return Comodule(c, c.dim, c.delta)


def sub_comodule(m: Comodule, w: Subspace) -> Comodule:
    """Restrict the coaction to an invariant subspace given by ``w``.

    Raises NotASubcomoduleError when the coaction leaves ``w``.
    """
    if w.ambient_dim != m.dim:
        raise DimensionMismatchError("subspace ambient dimension does not match comodule")
    f = m.coalgebra.field
    cdim = m.coalgebra.dim
    new_rho = []
    for row in w.basis.entries:
        tensor = [[f.zero] * cdim for _ in range(m.dim)]
        for x, coeff in enumerate(row):
            if coeff == 0:
                continue
            for y in range(m.dim):
                entry = m.rho[x][y]
                for k in range(cdim):
                    if entry[k] != 0:
                        tensor[y][k] = f.add(tensor[y][k], f.mul(coeff, entry[k]))
        slices = []
        for k in range(cdim):
            vec = [tensor[y][k] for y in range(m.dim)]
            coords = w.coords_of(vec)
            if coords is None:
                raise NotASubcomoduleError("coaction image leaves the subspace")
            slices.append(coords)
        new_rho.append(tuple(
            tuple(slices[k][r] for k in range(cdim)) for r in range(w.dim)
        ))
    return Comodule(m.coalgebra, w.dim, tuple(new_rho))


def quotient_comodule(m: Comodule, u: Subspace) -> Comodule:
    """Quotient comodule m / u on the canonical complement of u's pivots."""
    if u.ambient_dim != m.dim:
        raise DimensionMismatchError("subspace ambient dimension does not match comodule")
    f = m.coalgebra.field
    cdim = m.coalgebra.dim
    pivots = set(u.pivots())
    complement = [i for i in range(m.dim) if i not in pivots]
    qdim = len(complement)

    def project(vec):
        reduced = u.reduce(vec)
        return tuple(reduced[i] for i in complement)

    new_rho = []
    for x in complement:
        tensor_rows = []
        for k in range(cdim):
            vec = [m.rho[x][y][k] for y in range(m.dim)]
            tensor_rows.append(project(vec))
        new_rho.append(tuple(
            tuple(tensor_rows[k][r] for k in range(cdim)) for r in range(qdim)
        ))
    return Comodule(m.coalgebra, qdim, tuple(new_rho))
