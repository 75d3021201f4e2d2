import random

import pytest

from coalglab.coalg import (
    Coalgebra,
    Comodule,
    co_opposite,
    enumerate_subcomodules,
    is_chain,
    is_simple_comodule,
    regular_comodule,
    sub_comodule,
    transport,
    validate_coalgebra,
)
from coalglab.constructors import (
    make_Cn_closed_form,
    make_group_likes,
    make_kn,
)
from coalglab.errors import (
    BudgetExceededError,
    PreconditionError,
    UnsupportedFieldError,
)
from coalglab.exactla import Field, Matrix, QQ, Subspace, contains

GF2 = Field.gf(2)
GF3 = Field.gf(3)


def random_invertible(rng, field, n):
    while True:
        if field.is_rationals:
            rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
        m = Matrix.from_rows(field, rows)
        from coalglab.exactla import rref

        if rref(m)[1] == n:
            return m


def direct_sum(a: Coalgebra, b: Coalgebra) -> Coalgebra:
    """Block-diagonal direct sum coalgebra, for fixtures."""
    assert a.field == b.field
    f = a.field
    n = a.dim + b.dim
    delta = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                delta[i][j][k] = a.delta[i][j][k]
    for i in range(b.dim):
        for j in range(b.dim):
            for k in range(b.dim):
                delta[a.dim + i][a.dim + j][a.dim + k] = b.delta[i][j][k]
    eps = tuple(a.eps) + tuple(b.eps)
    return Coalgebra(f, n, tuple(tuple(tuple(r) for r in s) for s in delta), eps)


def double_primitive(field) -> Coalgebra:
    """Colocal but not chain: one group-like with two primitives over it."""
    f = field
    delta = [[[f.zero] * 3 for _ in range(3)] for _ in range(3)]
    delta[0][0][0] = f.one
    for v in (1, 2):
        delta[v][0][v] = f.one
        delta[v][v][0] = f.one
    eps = (f.one, f.zero, f.zero)
    return Coalgebra(f, 3, tuple(tuple(tuple(r) for r in s) for s in delta), eps)


class TestSimplicity:
    def test_dimension_one_is_simple(self):
        c = make_kn(3)
        sub = sub_comodule(regular_comodule(c), Subspace.from_vectors(QQ, 3, [[1, 0, 0]]))
        verdict = is_simple_comodule(sub)
        assert verdict.simple and verdict.certified

    def test_k2_regular_over_gf2(self):
        # Brute-force spin of all 3 nonzero vectors finds span{c_0}.
        c = make_kn(2, GF2)
        verdict = is_simple_comodule(regular_comodule(c))
        assert not verdict.simple
        assert verdict.certified
        assert verdict.witness.dim == 1

    def test_k2_regular_over_q(self):
        verdict = is_simple_comodule(regular_comodule(make_kn(2)))
        assert not verdict.simple
        assert verdict.certified

    def test_quaternion_socle_is_simple(self):
        # The dual of the division algebra D: the Norton trials cannot split
        # it, so the verdict is simple (randomized, not certified).
        verdict = is_simple_comodule(regular_comodule(make_Cn_closed_form(1)), seed=5)
        assert verdict.simple

    def test_two_group_likes_over_q(self):
        verdict = is_simple_comodule(regular_comodule(make_group_likes(2)))
        assert not verdict.simple
        assert verdict.certified

    def test_zero_module_rejected(self):
        c = make_kn(2)
        with pytest.raises(PreconditionError):
            is_simple_comodule(Comodule.create(c, 0, []))


class TestEnumerateSubcomodules:
    def test_k2_over_gf2(self):
        subs = enumerate_subcomodules(regular_comodule(make_kn(2, GF2)))
        assert len(subs) == 3
        assert [s.dim for s in subs] == [0, 1, 2]

    def test_two_group_likes_over_gf2(self):
        subs = enumerate_subcomodules(regular_comodule(make_group_likes(2, GF2)))
        assert len(subs) == 4
        assert [s.dim for s in subs] == [0, 1, 1, 2]

    def test_zero_comodule(self):
        subs = enumerate_subcomodules(Comodule.create(make_kn(2, GF2), 0, []))
        assert len(subs) == 1
        assert subs[0].dim == 0

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            enumerate_subcomodules(regular_comodule(make_kn(9, GF3)), budget=3 ** 8)

    def test_rationals_rejected(self):
        with pytest.raises(UnsupportedFieldError):
            enumerate_subcomodules(regular_comodule(make_kn(2)))


def is_totally_ordered(subs):
    ordered = sorted(subs, key=lambda s: s.dim)
    return all(
        contains(ordered[i + 1], ordered[i]) and ordered[i + 1].dim > ordered[i].dim
        for i in range(len(ordered) - 1)
    )


class TestIsChain:
    def test_kn_is_chain(self):
        for n in (1, 3, 6):
            report = is_chain(make_kn(n))
            assert report.chain
            assert report.certified
            assert all(f.dim == 1 for f in report.factors)
            assert report.lattice_dims == tuple(range(n + 1))

    def test_two_group_likes_not_chain(self):
        report = is_chain(make_group_likes(2))
        assert not report.chain
        assert report.certified
        assert report.factors[0].dim == 2

    def test_quaternion_cn_is_chain(self):
        report = is_chain(make_Cn_closed_form(2))
        assert report.chain
        assert all(f.dim == 4 for f in report.factors)

    def test_double_primitive_not_chain(self):
        report = is_chain(double_primitive(QQ))
        assert not report.chain
        # Coradical is a point, the next factor has dimension 2 and splits.
        assert report.factors[0].dim == 1
        assert report.factors[1].dim == 2

    def test_chain_verdict_matches_enumeration(self):
        rng = random.Random(23)
        fixtures = []
        for field in (GF2, GF3):
            for n in (2, 3, 4, 5):
                scramble = transport(make_kn(n, field), random_invertible(rng, field, n))
                fixtures.append(scramble)
            fixtures.append(make_group_likes(3, field))
            fixtures.append(direct_sum(make_kn(2, field), make_kn(3, field)))
            fixtures.append(double_primitive(field))
        for c in fixtures:
            assert validate_coalgebra(c).ok
            verdict = is_chain(c).chain
            lattice = enumerate_subcomodules(regular_comodule(c))
            assert verdict == is_totally_ordered(lattice)

    def test_co_opposite_symmetry(self):
        rng = random.Random(29)
        fixtures = [
            make_kn(4, GF2),
            transport(make_kn(3, GF3), random_invertible(rng, GF3, 3)),
            make_group_likes(2, GF2),
            direct_sum(make_kn(2, GF2), make_kn(2, GF2)),
            make_Cn_closed_form(2),
            double_primitive(QQ),
        ]
        for c in fixtures:
            assert is_chain(c).chain == is_chain(co_opposite(c)).chain

    def test_scrambled_kn_still_chain(self):
        rng = random.Random(31)
        for n in (2, 4):
            q = random_invertible(rng, QQ, n)
            report = is_chain(transport(make_kn(n), q))
            assert report.chain
            assert report.certified


class TestComoduleAxioms:
    def test_regular_and_derived_comodules_validate(self):
        from coalglab.coalg import (
            coradical_filtration,
            filtration_factor,
            validate_comodule,
        )
        from coalglab.constructors import make_Cn_closed_form

        for c in (make_kn(4), make_Cn_closed_form(2), make_group_likes(3)):
            regular = regular_comodule(c)
            assert validate_comodule(regular).ok
            report = coradical_filtration(c)
            sub = sub_comodule(regular, report.steps[0])
            assert validate_comodule(sub).ok
            for k in range(len(report.steps)):
                assert validate_comodule(filtration_factor(c, report, k)).ok

    def test_broken_coaction_reported(self):
        from coalglab.coalg import Comodule, validate_comodule

        c = make_kn(2)
        bad = Comodule.create(c, 1, [[[0, 1]]])
        report = validate_comodule(bad)
        assert not report.ok


class TestQuaternionSimplicityOracle:
    def test_division_algebra_has_no_proper_ideals(self):
        # Independent oracle for the simplicity of the quaternion socle: the
        # two-sided ideal generated by every basis element is everything.
        from coalglab.coalg import enumerate_basis_ideals
        from coalglab.constructors import make_quaternion_algebra

        ideals = enumerate_basis_ideals(make_quaternion_algebra())
        assert [i.dim for i in ideals] == [0, 4]
