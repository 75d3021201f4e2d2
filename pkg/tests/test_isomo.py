import random
from fractions import Fraction

import pytest

from coalglab.coalg import invert_matrix, transport, validate_coalgebra
from coalglab.constructors import make_Cn_closed_form, make_group_likes, make_kn
from coalglab.errors import PreconditionError
from coalglab.exactla import Field, Matrix, QQ
from coalglab.isomo import (
    CoalgebraIso,
    NotKn,
    build_divided_power_basis,
    extend_divided_power_basis,
    recognize_kn,
    transported_structure_constants,
    verify_iso,
)

GF5 = Field.gf(5)


def random_invertible(rng, field, n):
    from coalglab.exactla import rref

    while True:
        if field.is_rationals:
            rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
        m = Matrix.from_rows(field, rows)
        if rref(m)[1] == n:
            return m


def double_primitive(field):
    from coalglab.coalg import Coalgebra

    f = field
    delta = [[[f.zero] * 3 for _ in range(3)] for _ in range(3)]
    delta[0][0][0] = f.one
    for v in (1, 2):
        delta[v][0][v] = f.one
        delta[v][v][0] = f.one
    eps = (f.one, f.zero, f.zero)
    return Coalgebra(f, 3, tuple(tuple(tuple(r) for r in s) for s in delta), eps)


class TestVerifyIso:
    def test_identity_on_kn(self):
        c = make_kn(3)
        assert verify_iso(CoalgebraIso(c, c, Matrix.identity(QQ, 3)))

    def test_scaling_breaks_grouplike(self):
        c = make_kn(1)
        doubled = Matrix.from_rows(QQ, [[2]])
        assert not verify_iso(CoalgebraIso(c, c, doubled))

    def test_singular_matrix_rejected(self):
        c = make_kn(2)
        assert not verify_iso(CoalgebraIso(c, c, Matrix.zeros(QQ, 2, 2)))


class TestRecognizeKn:
    def test_standard_is_identity(self):
        iso = recognize_kn(make_kn(4))
        assert isinstance(iso, CoalgebraIso)
        assert iso.matrix == Matrix.identity(QQ, 4)

    def test_round_trip_up_to_12(self):
        for n in range(1, 13):
            iso = recognize_kn(make_kn(n))
            assert isinstance(iso, CoalgebraIso)
            assert verify_iso(iso)

    def test_scrambled_recognized_with_verified_intertwiner(self):
        rng = random.Random(61)
        for n in (2, 3, 5):
            q = random_invertible(rng, QQ, n)
            scrambled = transport(make_kn(n), q)
            iso = recognize_kn(scrambled)
            assert isinstance(iso, CoalgebraIso)
            assert verify_iso(iso)

    def test_composition_is_automorphism(self):
        rng = random.Random(67)
        n = 4
        q = random_invertible(rng, QQ, n)
        scrambled = transport(make_kn(n), q)
        iso = recognize_kn(scrambled)
        unscramble = invert_matrix(q.transpose())
        composite = iso.matrix.matmul(unscramble)
        auto = CoalgebraIso(make_kn(n), make_kn(n), composite)
        assert verify_iso(auto)

    def test_gf5_scrambles(self):
        rng = random.Random(71)
        for n in (2, 4, 7):
            q = random_invertible(rng, GF5, n)
            scrambled = transport(make_kn(n, GF5), q)
            iso = recognize_kn(scrambled)
            assert isinstance(iso, CoalgebraIso)
            assert verify_iso(iso)

    def test_two_group_likes_rejected(self):
        result = recognize_kn(make_group_likes(2))
        assert isinstance(result, NotKn)
        assert result.reason == "coradical-dimension"
        assert "2" in result.detail

    def test_colocal_non_chain_rejected(self):
        result = recognize_kn(double_primitive(QQ))
        assert isinstance(result, NotKn)
        assert result.reason == "not-chain"

    def test_quaternion_dual_rejected(self):
        # Colocal over Q would need an algebraically closed residue field;
        # here the coradical has dimension 4 and recognition refuses.
        result = recognize_kn(make_Cn_closed_form(2))
        assert isinstance(result, NotKn)
        assert result.reason == "coradical-dimension"


class TestExtendDividedPowerBasis:
    def test_step_zero_grouplike(self):
        c = make_kn(3)
        c0 = extend_divided_power_basis(c, [])
        assert c0 == (Fraction(1), Fraction(0), Fraction(0))

    def test_standard_partial_gives_standard_next(self):
        c = make_kn(4)
        partial = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
        ]
        c3 = extend_divided_power_basis(c, partial)
        assert c3 == (Fraction(0), Fraction(0), Fraction(0), Fraction(1))

    def test_scrambled_full_basis_satisfies_relations(self):
        rng = random.Random(73)
        q = random_invertible(rng, QQ, 3)
        scrambled = transport(make_kn(3), q)
        basis = build_divided_power_basis(scrambled)
        rebuilt = transported_structure_constants(scrambled, basis)
        standard = make_kn(3)
        assert rebuilt.delta == standard.delta
        assert rebuilt.eps == standard.eps
        assert validate_coalgebra(rebuilt).ok

    def test_iterated_reproduces_standard_on_kn(self):
        for n in (1, 2, 5):
            c = make_kn(n)
            basis = build_divided_power_basis(c)
            expected = Matrix.identity(QQ, n).entries
            assert tuple(basis) == expected

    def test_rejects_non_chain_step(self):
        with pytest.raises(PreconditionError):
            extend_divided_power_basis(make_group_likes(2), [])

    def test_rejects_overfull_partial(self):
        c = make_kn(2)
        with pytest.raises(PreconditionError):
            extend_divided_power_basis(c, [[1, 0], [0, 1]])


class TestCrossCheckWithChainVerdict:
    def test_recognition_matches_chain_and_colocal(self):
        from coalglab.coalg import coradical_filtration, is_chain
        from coalglab.constructors import make_Cn_closed_form

        rng = random.Random(79)
        fixtures = [
            make_kn(3),
            make_kn(1),
            transport(make_kn(4), random_invertible(rng, QQ, 4)),
            make_group_likes(2),
            double_primitive(QQ),
            make_Cn_closed_form(2),
        ]
        for c in fixtures:
            recognized = isinstance(recognize_kn(c), CoalgebraIso)
            colocal = coradical_filtration(c).steps[0].dim == 1
            chain = is_chain(c).chain
            assert recognized == (chain and colocal)
