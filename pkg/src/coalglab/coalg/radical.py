"""Jacobson radical, ideal arithmetic, and the perp Galois correspondence.

The radical is computed by the trace-form criterion (iterated kernel of the
bilinear form tr(L_{xy})), which is exact over characteristic zero and over
GF(p) with p greater than the algebra dimension.  For commutative algebras
over small GF(p) the nilradical equals the kernel of an iterated Frobenius
map, which is linear over a prime field; that path keeps small-characteristic
inputs exact instead of risking a wrong answer.  Anything else is refused.
"""
from __future__ import annotations

from ..errors import (
    BudgetExceededError,
    DimensionMismatchError,
    NotACoidealError,
    NotAnIdealError,
    PreconditionError,
    UnsupportedFieldError,
)
from ..exactla import Field, Matrix, Subspace, kernel, perp, subspace_sum
from .structures import Coalgebra, FDAlgebra


def _basis_vector(f: Field, n: int, i: int) -> tuple:
    return tuple(f.one if j == i else f.zero for j in range(n))


def multiply_subspaces(a: FDAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """Span of all products u * v with u in s and v in t."""
    if s.ambient_dim != a.dim or t.ambient_dim != a.dim:
        raise DimensionMismatchError("subspace does not live in the algebra")
    products = []
    for u in s.basis.entries:
        for v in t.basis.entries:
            products.append(a.multiply(u, v))
    return Subspace.from_vectors(a.field, a.dim, products)


def check_ideal(a: FDAlgebra, s: Subspace) -> None:
    """Raise NotAnIdealError naming a violating product if s is not two-sided."""
    for i in range(a.dim):
        e = _basis_vector(a.field, a.dim, i)
        for v in s.basis.entries:
            left = a.multiply(e, v)
            if not s.contains_vector(left):
                raise NotAnIdealError(f"product b{i} * {list(v)} leaves the subspace")
            right = a.multiply(v, e)
            if not s.contains_vector(right):
                raise NotAnIdealError(f"product {list(v)} * b{i} leaves the subspace")


def is_ideal(a: FDAlgebra, s: Subspace) -> bool:
    try:
        check_ideal(a, s)
        return True
    except NotAnIdealError:
        return False


def ideal_power(a: FDAlgebra, i: Subspace, k: int) -> Subspace:
    """k-fold product span of a two-sided ideal; k = 1 returns the ideal."""
    if k < 1:
        raise PreconditionError("ideal_power needs k >= 1")
    check_ideal(a, i)
    power = i
    for _ in range(k - 1):
        power = multiply_subspaces(a, power, i)
    return power


def ideal_generated_by(a: FDAlgebra, vectors) -> Subspace:
    """Two-sided ideal closure of a set of coordinate vectors."""
    span = Subspace.from_vectors(a.field, a.dim, list(vectors))
    # The span contains the generators themselves even though they need not
    # lie in A*v*A when the algebra is not unital on that side; with a unit
    # the first pass already stabilizes.
    while True:
        grown = span
        for i in range(a.dim):
            e = _basis_vector(a.field, a.dim, i)
            extra = []
            for v in grown.basis.entries:
                extra.append(a.multiply(e, v))
                extra.append(a.multiply(v, e))
            grown = subspace_sum(grown, Subspace.from_vectors(a.field, a.dim, extra))
        if grown == span:
            return span
        span = grown


def enumerate_basis_ideals(a: FDAlgebra, budget: int = 512) -> tuple:
    """Two-sided ideals generated by single basis vectors, closed under sums.

    Always contains the zero ideal; for chain algebras this is the full ideal
    lattice.  Results are sorted by dimension, then by basis entries.
    """
    seen = {}
    zero = Subspace.zero(a.field, a.dim)
    seen[_subspace_key(zero)] = zero
    for i in range(a.dim):
        ideal = ideal_generated_by(a, [_basis_vector(a.field, a.dim, i)])
        seen.setdefault(_subspace_key(ideal), ideal)
    frontier = list(seen.values())
    while frontier:
        if len(seen) > budget:
            raise BudgetExceededError(f"ideal enumeration exceeded budget {budget}")
        fresh = []
        for s in frontier:
            for t in list(seen.values()):
                u = subspace_sum(s, t)
                key = _subspace_key(u)
                if key not in seen:
                    seen[key] = u
                    fresh.append(u)
        frontier = fresh
    return tuple(sorted(seen.values(), key=_subspace_key))


def _subspace_key(s: Subspace):
    return (s.dim, tuple(tuple(str(x) for x in row) for row in s.basis.entries))


def quotient_algebra(a: FDAlgebra, ideal: Subspace) -> tuple:
    """Quotient algebra on the canonical complement of the ideal's pivots.

    Returns (quotient, complement_coordinates) where the complement
    coordinates identify the lifted basis positions in the ambient algebra.
    """
    f = a.field
    pivots = set(ideal.pivots())
    complement = [i for i in range(a.dim) if i not in pivots]
    qdim = len(complement)

    def project(vec):
        reduced = ideal.reduce(vec)
        return tuple(reduced[i] for i in complement)

    mult = []
    for i in complement:
        slice_ = []
        for j in complement:
            prod = a.multiply(_basis_vector(f, a.dim, i), _basis_vector(f, a.dim, j))
            slice_.append(project(prod))
        mult.append(tuple(slice_))
    unit = project(a.unit)
    return FDAlgebra(f, qdim, tuple(mult), unit), tuple(complement)


def _left_mult_traces(a: FDAlgebra) -> list:
    f = a.field
    traces = []
    for k in range(a.dim):
        acc = f.zero
        slice_k = a.mult[k]
        for m in range(a.dim):
            acc = f.add(acc, slice_k[m][m])
        traces.append(acc)
    return traces


def _trace_form_kernel(a: FDAlgebra) -> Subspace:
    """Kernel of the symmetric form (x, y) -> trace of left multiplication by xy."""
    f = a.field
    traces = _left_mult_traces(a)
    gram = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            acc = f.zero
            entry = a.mult[i][j]
            for k in range(a.dim):
                if entry[k] != 0 and traces[k] != 0:
                    acc = f.add(acc, f.mul(entry[k], traces[k]))
            row.append(acc)
        gram.append(tuple(row))
    return kernel(Matrix(f, a.dim, a.dim, tuple(gram)))


def _radical_by_trace_form(a: FDAlgebra) -> Subspace:
    radical = Subspace.zero(a.field, a.dim)
    current = a
    complement = tuple(range(a.dim))
    for _ in range(a.dim + 1):
        ker = _trace_form_kernel(current)
        if ker.is_zero():
            return radical
        lifted = []
        for row in ker.basis.entries:
            vec = [a.field.zero] * a.dim
            for coord, pos in zip(row, complement):
                vec[pos] = coord
            lifted.append(vec)
        radical = subspace_sum(radical, Subspace.from_vectors(a.field, a.dim, lifted))
        current, complement = quotient_algebra(a, radical)
    raise UnsupportedFieldError("trace-form iteration failed to stabilize")


def _radical_by_frobenius(a: FDAlgebra) -> Subspace:
    """Nilradical of a commutative algebra over GF(p) as a Frobenius kernel.

    Over the prime field the p-th power map is linear, and an element is
    nilpotent iff its p^m-th power vanishes once p^m reaches the dimension.
    """
    f = a.field
    p = f.p
    rows = []
    for i in range(a.dim):
        v = _basis_vector(f, a.dim, i)
        power = v
        for _ in range(p - 1):
            power = a.multiply(power, v)
        rows.append(power)
    frob = Matrix(f, a.dim, a.dim, tuple(rows))
    m = 1
    reach = p
    while reach < a.dim:
        reach *= p
        m += 1
    # Scalars of the prime field are Frobenius-fixed, so the p-th power map
    # is linear and the matrix with rows b_i^p represents it on row vectors.
    total = frob
    for _ in range(m - 1):
        total = total.matmul(frob)
    return kernel(total.transpose())


def jacobson_radical(a: FDAlgebra) -> Subspace:
    """The Jacobson radical as a canonical subspace.

    Supported exactly: characteristic zero; GF(p) with p > dim; and
    commutative algebras over any GF(p).  Other inputs raise
    UnsupportedFieldError rather than risking a wrong answer.
    """
    cached = a._cache.get("radical")
    if cached is not None:
        return cached
    f = a.field
    if f.is_rationals or f.p > a.dim:
        radical = _radical_by_trace_form(a)
    elif a.is_commutative():
        radical = _radical_by_frobenius(a)
    else:
        raise UnsupportedFieldError(
            f"radical over GF({f.p}) needs p > dim ({a.dim}) or a commutative algebra")
    a._cache["radical"] = radical
    return radical


def ideal_perp(a: FDAlgebra, x: Subspace) -> Subspace:
    """Annihilator in the predual coalgebra of an ideal of its dual algebra.

    The caller supplies ``a`` as the dual algebra of some coalgebra; the
    returned subspace lives in that coalgebra's coordinates.  The input is
    eagerly checked to be a two-sided ideal.
    """
    if x.ambient_dim != a.dim:
        raise DimensionMismatchError("subspace does not live in the algebra")
    check_ideal(a, x)
    return perp(x)


def coideal_perp(c: Coalgebra, w: Subspace) -> Subspace:
    """Annihilator in the dual algebra of a subcoalgebra of ``c``.

    The input is eagerly checked to be a subcoalgebra (its comultiplication
    lands in w (x) w); the Galois pair with ideal_perp restores ideals.
    """
    if w.ambient_dim != c.dim:
        raise DimensionMismatchError("subspace does not live in the coalgebra")
    check_subcoalgebra(c, w)
    return perp(w)


def check_subcoalgebra(c: Coalgebra, w: Subspace) -> None:
    """Raise NotACoidealError when delta(w) is not contained in w (x) w."""
    f = c.field
    for row in w.basis.entries:
        tensor = [[f.zero] * c.dim for _ in range(c.dim)]
        for i, coeff in enumerate(row):
            if coeff == 0:
                continue
            slice_ = c.delta[i]
            for jj in range(c.dim):
                for kk in range(c.dim):
                    v = slice_[jj][kk]
                    if v != 0:
                        tensor[jj][kk] = f.add(tensor[jj][kk], f.mul(coeff, v))
        for kk in range(c.dim):
            vec = [tensor[jj][kk] for jj in range(c.dim)]
            if any(x != 0 for x in vec) and not w.contains_vector(vec):
                raise NotACoidealError("left tensor leg leaves the subspace")
        for jj in range(c.dim):
            if any(x != 0 for x in tensor[jj]) and not w.contains_vector(tensor[jj]):
                raise NotACoidealError("right tensor leg leaves the subspace")


def is_subcoalgebra(c: Coalgebra, w: Subspace) -> bool:
    try:
        check_subcoalgebra(c, w)
        return True
    except NotACoidealError:
        return False
