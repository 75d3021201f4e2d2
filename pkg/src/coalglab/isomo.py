"""Constructive recognition of divided power coalgebra truncations.

A finite-dimensional coalgebra whose coradical is one-dimensional and whose
coradical filtration grows by one dimension per step is isomorphic to the
divided power truncation of its dimension.  ``recognize_kn`` builds the
isomorphism on the dual side: it picks an element x of the radical outside
the radical square, checks that the powers 1, x, ..., x^(n-1) form a basis
(giving the truncated polynomial algebra on x), and transposes that basis
into a coalgebra isomorphism, which is then re-verified structurally.

``extend_divided_power_basis`` performs one step of the dual construction:
given c_0, ..., c_(n-1) with the divided power comultiplication, it solves
the linear system for a compatible c_n.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .coalg.filtration import coradical_filtration
from .coalg.radical import jacobson_radical, multiply_subspaces
from .coalg.structures import (
    Coalgebra,
    dual_algebra,
    require_valid_coalgebra,
)
from .constructors import make_kn
from .errors import PreconditionError, StructuralError
from .exactla import Field, Matrix, Subspace, kernel, rref


@dataclass(frozen=True)
class CoalgebraIso:
    """Invertible coalgebra map; column i of ``matrix`` is the image of the
    i-th source basis vector in target coordinates."""

    source: Coalgebra
    target: Coalgebra
    matrix: Matrix


@dataclass(frozen=True)
class NotKn:
    """Refusal with the failed hypothesis."""

    reason: str
    detail: str = ""

    def __bool__(self):
        return False


RecognitionResult = Union[CoalgebraIso, NotKn]


def verify_iso(iso: CoalgebraIso) -> bool:
    """Exact check: matrix invertible and both intertwining identities hold.

    For every source basis vector the target comultiplication of its image
    must match the transported source comultiplication, and the counits must
    agree through the map.
    """
    src, tgt, p = iso.source, iso.target, iso.matrix
    if src.dim != tgt.dim or p.rows != src.dim or p.cols != src.dim:
        return False
    if src.field != tgt.field or p.field != src.field:
        return False
    f = src.field
    n = src.dim
    _, rank = rref(p)
    if rank != n:
        return False
    for i in range(n):
        image = tuple(p.entries[k][i] for k in range(n))
        lhs = {}
        for a, coeff in enumerate(image):
            if coeff == 0:
                continue
            slice_ = tgt.delta[a]
            for b in range(n):
                for c in range(n):
                    v = slice_[b][c]
                    if v != 0:
                        key = (b, c)
                        lhs[key] = f.add(lhs.get(key, f.zero), f.mul(coeff, v))
        rhs = {}
        slice_ = src.delta[i]
        for j in range(n):
            for k in range(n):
                v = slice_[j][k]
                if v == 0:
                    continue
                for b in range(n):
                    pj = p.entries[b][j]
                    if pj == 0:
                        continue
                    w = f.mul(v, pj)
                    for c in range(n):
                        pk = p.entries[c][k]
                        if pk != 0:
                            key = (b, c)
                            rhs[key] = f.add(rhs.get(key, f.zero), f.mul(w, pk))
        keys = set(lhs) | set(rhs)
        if any(lhs.get(key, f.zero) != rhs.get(key, f.zero) for key in keys):
            return False
        eps_through = f.zero
        for k, coeff in enumerate(image):
            if coeff != 0 and tgt.eps[k] != 0:
                eps_through = f.add(eps_through, f.mul(coeff, tgt.eps[k]))
        if eps_through != src.eps[i]:
            return False
    return True


def _canonical_complement_vector(outer: Subspace, inner: Subspace) -> tuple:
    """First basis vector of the canonical complement of inner inside outer.

    The complement positions are the outer basis rows whose index is not a
    pivot coordinate of inner expressed on the outer basis.
    """
    coords = []
    for row in inner.basis.entries:
        c = outer.coords_of(row)
        if c is None:
            raise StructuralError("inner subspace does not sit inside the outer one")
        coords.append(c)
    inner_in_outer = Subspace.from_vectors(outer.field, outer.dim, coords)
    pivots = set(inner_in_outer.pivots())
    for r in range(outer.dim):
        if r not in pivots:
            return outer.basis.entries[r]
    raise StructuralError("inner subspace fills the outer one")


def recognize_kn(c: Coalgebra, check: bool = True) -> RecognitionResult:
    """Recognize a colocal chain coalgebra and produce the isomorphism.

    Returns a verified CoalgebraIso onto ``make_kn(dim)`` when the coradical
    is a point and every filtration step grows by exactly one dimension, and
    a NotKn refusal naming the failed hypothesis otherwise.  Invalid
    coalgebras and unsupported fields raise.
    """
    report = coradical_filtration(c)
    dims = report.step_dims
    if dims[0] != 1:
        return NotKn("coradical-dimension", f"coradical has dimension {dims[0]}")
    for k in range(1, len(dims)):
        if dims[k] != dims[k - 1] + 1:
            return NotKn(
                "not-chain",
                f"filtration step {k} jumps from dimension {dims[k - 1]} to {dims[k]}")
    n = c.dim
    f = c.field
    a = dual_algebra(c)
    rows = [a.unit]
    if n > 1:
        radical = jacobson_radical(a)
        radical_sq = multiply_subspaces(a, radical, radical)
        x = _canonical_complement_vector(radical, radical_sq)
        power = a.unit
        for _ in range(n - 1):
            power = a.multiply(power, x)
            rows.append(power)
    basis_matrix = Matrix.from_rows(f, rows)
    _, rank = rref(basis_matrix)
    if rank != n:
        raise StructuralError(
            "powers of the chosen radical element do not span the dual; "
            "this contradicts the verified chain hypotheses")
    # basis_matrix[k][i] is the coordinate of x^k on the i-th dual basis
    # vector, which is also the coefficient of c_k in the image of e_i under
    # the transpose of the algebra isomorphism X^k -> x^k.
    iso = CoalgebraIso(c, make_kn(n, f), basis_matrix)
    if check and not verify_iso(iso):
        raise StructuralError("constructed isomorphism failed re-verification")
    return iso


def extend_divided_power_basis(c: Coalgebra, partial: Sequence[Sequence]) -> tuple:
    """One step of divided power basis building.

    Given vectors c_0, ..., c_(n-1) satisfying the divided power relations,
    returns c_n with delta(c_n) = sum_{i+j=n} c_i (x) c_j and eps(c_n) = 0.
    The solution is unique up to the primitive line through c_1; the returned
    representative has a vanishing c_1 coordinate (and at the first step,
    where only the scale is free, the echelon-normalized primitive is
    returned).
    """
    require_valid_coalgebra(c)
    f = c.field
    n = len(partial)
    dim = c.dim
    if n == 0:
        return _initial_group_like(c)
    partial = [tuple(f.of(x) for x in row) for row in partial]
    if n >= dim:
        raise PreconditionError("the partial basis already fills the coalgebra")
    c0 = partial[0]
    rhs_tensor = [[f.zero] * dim for _ in range(dim)]
    for i in range(1, n):
        ci, cj = partial[i], partial[n - i]
        for aa in range(dim):
            if ci[aa] == 0:
                continue
            for bb in range(dim):
                if cj[bb] != 0:
                    rhs_tensor[aa][bb] = f.add(rhs_tensor[aa][bb], f.mul(ci[aa], cj[bb]))
    rows = []
    targets = []
    for aa in range(dim):
        for bb in range(dim):
            row = []
            for t in range(dim):
                coeff = c.delta[t][aa][bb]
                if bb == t:
                    coeff = f.sub(coeff, c0[aa])
                if aa == t:
                    coeff = f.sub(coeff, c0[bb])
                row.append(coeff)
            rows.append(row)
            targets.append(rhs_tensor[aa][bb])
    rows.append(list(c.eps))
    targets.append(f.zero)
    solution, homogeneous = _solve_affine(f, rows, targets)
    if solution is None:
        raise PreconditionError(
            "no divided power extension exists at this step; "
            "the input is not a colocal chain coalgebra here")
    if n == 1:
        if homogeneous.dim == 0:
            raise PreconditionError("no primitive extension exists at step one")
        return homogeneous.basis.entries[0]
    span_prev = Subspace.from_vectors(f, dim, partial)
    coords = _coordinates_along(span_prev, partial, solution)
    if coords is None:
        raise StructuralError("partial basis vectors are not independent")
    if coords[1] != 0:
        solution = tuple(
            f.sub(x, f.mul(coords[1], y)) for x, y in zip(solution, partial[1]))
    return tuple(solution)


def _initial_group_like(c: Coalgebra) -> tuple:
    f = c.field
    filtration = coradical_filtration(c)
    step0 = filtration.steps[0]
    if step0.dim != 1:
        raise PreconditionError("the coradical is not a point")
    w = step0.basis.entries[0]
    # delta(w) = lam * w (x) w; rescale so the result is group-like.
    lam = None
    for aa in range(c.dim):
        for bb in range(c.dim):
            acc = f.zero
            for t in range(c.dim):
                if w[t] != 0 and c.delta[t][aa][bb] != 0:
                    acc = f.add(acc, f.mul(w[t], c.delta[t][aa][bb]))
            if acc != 0:
                if w[aa] == 0 or w[bb] == 0:
                    raise PreconditionError("coradical is not spanned by a group-like")
                lam = f.mul(acc, f.inv(f.mul(w[aa], w[bb])))
                break
        if lam is not None:
            break
    if lam is None:
        raise PreconditionError("coradical vector has zero comultiplication")
    return tuple(f.mul(lam, x) for x in w)


def _solve_affine(f: Field, rows, targets):
    """Particular solution and homogeneous kernel of rows @ v = targets."""
    ncols = len(rows[0]) if rows else 0
    aug = Matrix.from_rows(f, [list(r) + [t] for r, t in zip(rows, targets)])
    reduced, rank = rref(aug)
    pivots = []
    for r in range(rank):
        for cc, val in enumerate(reduced.entries[r]):
            if val != 0:
                pivots.append(cc)
                break
    if ncols in pivots:
        return None, None
    solution = [f.zero] * ncols
    for r, pc in enumerate(pivots):
        solution[pc] = reduced.entries[r][ncols]
    coeff_matrix = Matrix.from_rows(f, rows)
    return tuple(solution), kernel(coeff_matrix)


def _coordinates_along(span_prev: Subspace, partial, vector):
    """Coefficients, on the partial basis, of the span component of vector."""
    f = span_prev.field
    residual = span_prev.reduce(vector)
    span_part = tuple(f.sub(a, b) for a, b in zip(vector, residual))
    npart = len(partial)
    aug_rows = []
    for i in range(span_prev.ambient_dim):
        aug_rows.append([partial[j][i] for j in range(npart)] + [span_part[i]])
    reduced, rank = rref(Matrix.from_rows(f, aug_rows))
    pivots = []
    for r in range(rank):
        for cc, val in enumerate(reduced.entries[r]):
            if val != 0:
                pivots.append(cc)
                break
    if npart in pivots:
        return None
    coords = [f.zero] * npart
    for r, pc in enumerate(pivots):
        coords[pc] = reduced.entries[r][npart]
    return tuple(coords)


def build_divided_power_basis(c: Coalgebra) -> tuple:
    """Iterate the extension from scratch into a full divided power basis."""
    basis = []
    for _ in range(c.dim):
        basis.append(extend_divided_power_basis(c, basis))
    return tuple(basis)


def transported_structure_constants(c: Coalgebra, basis: Sequence[Sequence]):
    """Structure constants of c on the given basis rows (must be a basis)."""
    from .coalg.structures import transport

    q = Matrix.from_rows(c.field, list(basis))
    return transport(c, q)
