from fastapi.testclient import TestClient

from coalglab import __version__
from coalglab.serialize import coalgebra_to_json
from coalglab.constructors import make_group_likes, make_kn
from coalglab.service.app import app

client = TestClient(app)


def coalgebra_body(c, seed=0):
    return {"coalgebra": coalgebra_to_json(c), "seed": seed}


class TestVersion:
    def test_version_endpoint(self):
        response = client.get("/version")
        assert response.status_code == 200
        assert response.json() == {"name": "coalglab", "version": __version__}


class TestConstructEndpoint:
    def test_construct_kn(self):
        response = client.post("/construct", json={"kind": "kn", "n": 3})
        assert response.status_code == 200
        data = response.json()
        assert data["dim"] == 3
        assert data["field"] == "Q"

    def test_construct_over_gf(self):
        response = client.post(
            "/construct", json={"kind": "kn", "n": 2, "field": {"GF": 3}})
        assert response.status_code == 200
        assert response.json()["field"] == {"GF": 3}

    def test_unsupported_field_is_400(self):
        response = client.post(
            "/construct", json={"kind": "quat-cn", "n": 2, "field": {"GF": 5}})
        assert response.status_code == 400
        body = response.json()
        assert body["error"] == "UnsupportedFieldError"

    def test_bad_kind_is_422(self):
        response = client.post("/construct", json={"kind": "nope", "n": 2})
        assert response.status_code == 422


class TestValidateEndpoint:
    def test_valid(self):
        response = client.post("/validate", json=coalgebra_body(make_kn(4)))
        assert response.status_code == 200
        report = response.json()
        assert report["verdict"] is True
        assert report["command"] == "validate"
        assert report["version"] == __version__

    def test_invalid_lists_violations(self):
        body = {
            "coalgebra": {
                "field": "Q",
                "dim": 1,
                "delta": [[0, 0, 0, "2"]],
                "eps": ["1"],
            }
        }
        response = client.post("/validate", json=body)
        report = response.json()
        assert report["verdict"] is False
        assert report["details"]["violations"]

    def test_malformed_payload_is_422(self):
        response = client.post("/validate", json={"coalgebra": {"dim": 1}})
        assert response.status_code == 422


class TestChainEndpoint:
    def test_chain_true(self):
        response = client.post("/chain", json=coalgebra_body(make_kn(4), seed=7))
        report = response.json()
        assert report["verdict"] is True
        assert report["seed"] == 7

    def test_chain_false_is_still_200(self):
        response = client.post("/chain", json=coalgebra_body(make_group_likes(2)))
        assert response.status_code == 200
        assert response.json()["verdict"] is False


class TestFiltrationEndpoint:
    def test_step_dims(self):
        response = client.post("/filtration", json=coalgebra_body(make_kn(5)))
        assert response.json()["details"]["step_dims"] == [1, 2, 3, 4, 5]


class TestDualIdealsEndpoint:
    def test_kn4(self):
        response = client.post("/dual-ideals", json=coalgebra_body(make_kn(4)))
        report = response.json()
        assert report["verdict"] is True
        assert report["details"]["ideal_count"] == 5


class TestSplitEndpoint:
    def test_split(self):
        body = {
            "presentation": {
                "ring": "Q",
                "precision": 8,
                "generators": 2,
                "relations": [[["0", "1"], ["0", "0", "1"]], [["0", "0", "1"], ["0", "0", "0", "1"]]],
            }
        }
        response = client.post("/split", json=body)
        report = response.json()
        assert report["verdict"] is True
        assert report["details"]["free_rank"] == 1
        assert report["details"]["torsion_exponents"] == [1]

    def test_quaternion_ring(self):
        body = {
            "presentation": {
                "ring": "quaternion",
                "precision": 4,
                "generators": 1,
                "relations": [[[["0", "0", "0", "0"], ["1", "0", "0", "0"]]]],
            }
        }
        response = client.post("/split", json=body)
        report = response.json()
        assert report["details"]["torsion_exponents"] == [1]
        assert report["details"]["torsion_dim"] == 4


class TestRecognizeEndpoint:
    def test_recognize_kn(self):
        response = client.post("/recognize-kn", json=coalgebra_body(make_kn(3)))
        report = response.json()
        assert report["verdict"] is True
        matrix = report["details"]["matrix"]
        assert matrix == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]

    def test_reject_reason(self):
        response = client.post("/recognize-kn", json=coalgebra_body(make_group_likes(3)))
        report = response.json()
        assert report["verdict"] is False
        assert report["details"]["reason"] == "coradical-dimension"
