import random
from fractions import Fraction

import pytest

from coalglab.errors import FieldMismatchError, PreconditionError
from coalglab.exactla import (
    QQ,
    Field,
    Matrix,
    Subspace,
    contains,
    kernel,
    perp,
    rref,
    subspace_intersect,
    subspace_sum,
)

GF2 = Field.gf(2)
GF3 = Field.gf(3)


def mat(field, rows):
    return Matrix.from_rows(field, rows)


def random_matrix(rng, field, rows, cols):
    if field.is_rationals:
        return mat(field, [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
    return mat(field, [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)])


def random_subspace(rng, field, ambient, nvecs):
    vecs = [[rng.randrange(field.p) for _ in range(ambient)] for _ in range(nvecs)]
    return Subspace.from_vectors(field, ambient, vecs)


class TestField:
    def test_rational_scalars_are_canonical(self):
        assert QQ.of("3/6") == Fraction(1, 2)
        assert QQ.of("-3/7").denominator == 7

    def test_gf_requires_prime(self):
        with pytest.raises(PreconditionError):
            Field.gf(6)

    def test_floats_rejected(self):
        with pytest.raises(PreconditionError):
            QQ.of(0.5)

    def test_gf_arithmetic(self):
        assert GF3.inv(2) == 2
        assert GF3.add(2, 2) == 1


class TestRref:
    def test_identity_is_fixed(self):
        m = Matrix.identity(QQ, 3)
        reduced, rank = rref(m)
        assert reduced == m
        assert rank == 3

    def test_proportional_rows(self):
        reduced, rank = rref(mat(QQ, [[1, 2], [2, 4]]))
        assert rank == 1
        assert reduced == mat(QQ, [[1, 2], [0, 0]])

    def test_swap_over_gf2(self):
        # Oracle: multiply the elimination result back out by hand; swapping
        # the two rows of the antidiagonal matrix gives the identity.
        reduced, rank = rref(mat(GF2, [[0, 1], [1, 0]]))
        assert reduced == Matrix.identity(GF2, 2)
        assert rank == 2

    def test_idempotent(self):
        rng = random.Random(7)
        for field in (QQ, GF2, GF3):
            for _ in range(25):
                m = random_matrix(rng, field, rng.randint(1, 5), rng.randint(1, 5))
                reduced, _ = rref(m)
                again, _ = rref(reduced)
                assert again == reduced

    def test_mixed_field_inputs_rejected(self):
        a = mat(QQ, [[1, 0]])
        b = mat(GF2, [[1, 0]])
        with pytest.raises(FieldMismatchError):
            a.matmul(b.transpose())


class TestKernel:
    def test_identity_has_zero_kernel(self):
        assert kernel(Matrix.identity(QQ, 3)).is_zero()

    def test_single_equation(self):
        ker = kernel(mat(QQ, [[1, 1]]))
        assert ker == Subspace.from_vectors(QQ, 2, [[-1, 1]])

    def test_rank_deficient(self):
        # Oracle: solve by hand and check m @ v = 0 plus the dimension count.
        m = mat(QQ, [[1, 2], [2, 4]])
        ker = kernel(m)
        assert ker == Subspace.from_vectors(QQ, 2, [[-2, 1]])
        for v in ker.basis.entries:
            assert all(sum(m.entry(i, j) * v[j] for j in range(2)) == 0 for i in range(2))

    def test_rank_nullity(self):
        rng = random.Random(11)
        for field in (QQ, GF2, GF3):
            for _ in range(25):
                m = random_matrix(rng, field, rng.randint(1, 5), rng.randint(1, 6))
                _, rank = rref(m)
                assert rank + kernel(m).dim == m.cols


class TestSubspaceLattice:
    def test_sum_with_zero(self):
        b = Subspace.from_vectors(QQ, 3, [[1, 2, 3]])
        z = Subspace.zero(QQ, 3)
        assert subspace_sum(z, b) == b
        assert subspace_intersect(z, b).is_zero()
        assert contains(b, z)

    def test_coordinate_spans(self):
        a = Subspace.from_vectors(QQ, 3, [[1, 0, 0]])
        b = Subspace.from_vectors(QQ, 3, [[0, 1, 0]])
        assert subspace_sum(a, b).dim == 2
        assert subspace_intersect(a, b).is_zero()

    def test_intersection_of_nested(self):
        # Oracle: brute membership check of the diagonal vector.
        a = Subspace.from_vectors(QQ, 2, [[1, 1]])
        b = Subspace.from_vectors(QQ, 2, [[1, 0], [0, 1]])
        assert subspace_intersect(a, b) == a
        assert contains(b, a)
        assert b.contains_vector([1, 1])

    def test_contains_agrees_with_sum_definition(self):
        rng = random.Random(13)
        for _ in range(40):
            field = rng.choice((GF2, GF3))
            n = rng.randint(1, 5)
            a = random_subspace(rng, field, n, rng.randint(0, n))
            b = random_subspace(rng, field, n, rng.randint(0, n))
            assert contains(a, b) == (subspace_sum(a, b) == a)

    def test_modular_law_spot_checks(self):
        # a >= c implies a /\ (b + c) = (a /\ b) + c, over GF(2) and GF(3).
        rng = random.Random(17)
        for _ in range(60):
            field = rng.choice((GF2, GF3))
            n = rng.randint(2, 6)
            a = random_subspace(rng, field, n, rng.randint(0, n))
            b = random_subspace(rng, field, n, rng.randint(0, n))
            c = subspace_intersect(a, random_subspace(rng, field, n, rng.randint(0, n)))
            lhs = subspace_intersect(a, subspace_sum(b, c))
            rhs = subspace_sum(subspace_intersect(a, b), c)
            assert lhs == rhs

    def test_dimension_mismatch(self):
        from coalglab.errors import DimensionMismatchError

        a = Subspace.zero(QQ, 2)
        b = Subspace.zero(QQ, 3)
        with pytest.raises(DimensionMismatchError):
            subspace_sum(a, b)


class TestPerp:
    def test_full_space(self):
        assert perp(Subspace.full(QQ, 3)).is_zero()

    def test_zero_space(self):
        assert perp(Subspace.zero(QQ, 3)).is_full()

    def test_coordinate_subspace(self):
        w = Subspace.from_vectors(QQ, 3, [[1, 0, 0]])
        assert perp(w) == Subspace.from_vectors(QQ, 3, [[0, 1, 0], [0, 0, 1]])

    def test_involution_and_order_reversal(self):
        rng = random.Random(19)
        for _ in range(40):
            field = rng.choice((GF2, GF3))
            n = rng.randint(1, 6)
            a = random_subspace(rng, field, n, rng.randint(0, n))
            b = random_subspace(rng, field, n, rng.randint(0, n))
            assert perp(perp(a)) == a
            assert perp(a).dim == n - a.dim
            assert contains(a, b) == contains(perp(b), perp(a))


class TestVectorHelpers:
    def test_coords_roundtrip(self):
        s = Subspace.from_vectors(QQ, 3, [[1, 0, 2], [0, 1, 1]])
        coords = s.coords_of([2, 3, 7])
        assert coords == (Fraction(2), Fraction(3))
        assert s.coords_of([0, 0, 1]) is None

    def test_apply_row(self):
        m = mat(QQ, [[1, 2], [3, 4]])
        assert m.apply_row([1, 1]) == (Fraction(4), Fraction(6))
