import json

import pytest

from coalglab.chainmod import Presentation, SeriesRing
from coalglab.constructors import make_Cn_closed_form, make_kn
from coalglab.errors import ParseError
from coalglab.exactla import Field, QQ
from coalglab.serialize import (
    coalgebra_from_json,
    coalgebra_to_json,
    field_from_json,
    field_to_json,
    parse_field_flag,
    presentation_from_json,
    presentation_to_json,
)


class TestFieldTags:
    def test_round_trip(self):
        for fld in (QQ, Field.gf(2), Field.gf(7)):
            assert field_from_json(field_to_json(fld)) == fld

    def test_bad_tags(self):
        with pytest.raises(ParseError):
            field_from_json("R")
        with pytest.raises(ParseError):
            field_from_json({"GF": 6})

    def test_flag_parsing(self):
        assert parse_field_flag("Q") == QQ
        assert parse_field_flag("GF5") == Field.gf(5)
        assert parse_field_flag("GF(3)") == Field.gf(3)
        with pytest.raises(ParseError):
            parse_field_flag("C")


class TestCoalgebraFiles:
    def test_round_trip_constructions(self):
        for c in (make_kn(4), make_Cn_closed_form(2), make_kn(3, Field.gf(5))):
            again = coalgebra_from_json(coalgebra_to_json(c))
            assert again.field == c.field
            assert again.delta == c.delta
            assert again.eps == c.eps
            assert again.basis_names == c.basis_names

    def test_scalars_are_exact_strings(self):
        data = coalgebra_to_json(make_kn(2))
        assert all(isinstance(q[3], str) for q in data["delta"])
        assert all(isinstance(x, str) for x in data["eps"])
        text = json.dumps(data)
        assert "0.5" not in text

    def test_rational_strings_normalized(self):
        data = {
            "field": "Q",
            "dim": 1,
            "delta": [[0, 0, 0, "3/3"]],
            "eps": ["2/2"],
        }
        c = coalgebra_from_json(data)
        assert c.delta[0][0][0] == 1
        assert c.eps[0] == 1
        assert c.eps[0].denominator == 1

    def test_duplicate_entries_rejected(self):
        data = {
            "field": "Q",
            "dim": 1,
            "delta": [[0, 0, 0, "1"], [0, 0, 0, "1"]],
            "eps": ["1"],
        }
        with pytest.raises(ParseError):
            coalgebra_from_json(data)

    def test_out_of_range_index(self):
        data = {"field": "Q", "dim": 1, "delta": [[0, 0, 1, "1"]], "eps": ["1"]}
        with pytest.raises(ParseError):
            coalgebra_from_json(data)

    def test_bad_scalar_context(self):
        data = {"field": {"GF": 5}, "dim": 1, "delta": [[0, 0, 0, "1/2"]], "eps": ["1"]}
        with pytest.raises(ParseError) as err:
            coalgebra_from_json(data)
        assert "delta entry 0" in str(err.value)


class TestPresentationFiles:
    def test_commutative_round_trip(self):
        ring = SeriesRing.commutative(QQ, 6)
        p = Presentation.create(ring, 2, [
            (ring.series([0, 1]), ring.series(["1/2", 0, 3])),
        ])
        again = presentation_from_json(presentation_to_json(p))
        assert again.ring == p.ring
        assert again.generators == p.generators
        assert all(
            x.coeffs == y.coeffs
            for ra, rb in zip(again.relations, p.relations)
            for x, y in zip(ra, rb)
        )

    def test_quaternion_round_trip(self):
        ring = SeriesRing.quaternion(4)
        p = Presentation.create(ring, 1, [
            (ring.series([[0, 1, 0, 0], [1, 0, 0, 0]]),),
        ])
        again = presentation_from_json(presentation_to_json(p))
        assert again.ring == p.ring
        assert again.relations[0][0].coeffs == p.relations[0][0].coeffs

    def test_default_precision_applied(self):
        data = {
            "ring": "Q",
            "generators": 1,
            "relations": [[["0", "0", "0", "1"]]],
        }
        p = presentation_from_json(data)
        assert p.ring.precision == 2 * 3 + 4

    def test_precision_override(self):
        data = {"ring": "Q", "generators": 1, "relations": [[["1"]]]}
        p = presentation_from_json(data, precision_override=9)
        assert p.ring.precision == 9

    def test_gf_ring(self):
        data = {
            "ring": {"GF": 2},
            "precision": 4,
            "generators": 2,
            "relations": [[["1", "1"], ["0", "1"]]],
        }
        p = presentation_from_json(data)
        assert p.ring.field == Field.gf(2)

    def test_quaternion_coefficient_shape_enforced(self):
        data = {
            "ring": "quaternion",
            "precision": 4,
            "generators": 1,
            "relations": [[["1"]]],
        }
        with pytest.raises(ParseError):
            presentation_from_json(data)

    def test_wrong_row_length(self):
        data = {"ring": "Q", "precision": 4, "generators": 2, "relations": [[["1"]]]}
        with pytest.raises(ParseError):
            presentation_from_json(data)
