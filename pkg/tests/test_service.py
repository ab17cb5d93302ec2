import pytest
from fastapi.testclient import TestClient

from slgen import schemas, service
from slgen.errors import EvenCharacteristicError, ParseError


@pytest.fixture(scope="module")
def client():
    return TestClient(service.app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200 and resp.json() == {"status": "ok"}


def test_genpair_endpoint(client):
    resp = client.post("/genpair", json={"field": "5", "n": 4, "seed": 0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["verdict"] is True and body["closure_dim"] == 15
    assert body["n"] == 4 and len(body["generators"]) == 2


def test_genpair_exceptional_case_is_422(client):
    resp = client.post("/genpair", json={"field": "3", "n": 3})
    assert resp.status_code == 422
    body = resp.json()
    assert body["code"] == "ExceptionalCase"


def test_genpair_char_2_is_422(client):
    resp = client.post("/genpair", json={"field": "2", "n": 3})
    assert resp.status_code == 422
    assert resp.json()["code"] == "EvenCharacteristic"


def test_bad_field_is_400(client):
    resp = client.post("/genpair", json={"field": "abc", "n": 3})
    assert resp.status_code == 400
    assert resp.json()["code"] == "ParseError"


def test_count_st_endpoint(client):
    resp = client.post("/count-st", json={"field": "3", "n": 3})
    assert resp.status_code == 200
    body = resp.json()
    assert body["formula"] == 6 and body["brute"] == 6 and body["match"] is True


def test_count_st_skips_brute_above_cap(client):
    resp = client.post(
        "/count-st", json={"field": "5", "n": 5, "brute_cap": 100}
    )
    body = resp.json()
    assert body["brute"] is None and body["match"] is None
    assert body["formula"] > 0


def test_sidon_endpoint(client):
    resp = client.post("/sidon", json={"n": 4, "method": "greedy"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["elems"] == [0, 1, 3, 7, 12] and body["valid"] is True
    resp2 = client.post("/sidon", json={"n": 4, "modulus": 101})
    body2 = resp2.json()
    assert body2["consistent"] is True
    assert sum(body2["consistent_set"]) % 101 == 0


def test_sidon_small_modulus_is_422(client):
    resp = client.post("/sidon", json={"n": 4, "modulus": 3})
    assert resp.status_code == 422
    assert resp.json()["code"] == "ConsistencyLost"


def test_verify_endpoint(client):
    matrices = ["0,1;1,0", "1,0;0,-1"]
    resp = client.post(
        "/verify", json={"field": "3", "matrices": matrices, "target": "sl"}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["verdict"] is True and body["closure_dim"] == 3


def test_verify_triple_psl3(client):
    matrices = ["1,0,0;0,-1,0;0,0,0", "0,0,1;0,0,1;0,0,0", "0,0,0;0,0,0;1,1,0"]
    resp = client.post(
        "/verify", json={"field": "3", "matrices": matrices, "target": "psl"}
    )
    body = resp.json()
    assert body["verdict"] is True and body["closure_dim"] == 7


def test_identity_endpoint(client):
    resp = client.post(
        "/identity", json={"case": "psl3", "field": "3", "trials": 40}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["max_pair_dim"] == 4 and body["failures"] == []


def test_search_f2_endpoint(client):
    resp = client.post(
        "/search-f2", json={"n_values": [3, 4], "trials": 200, "seed": 0}
    )
    assert resp.status_code == 200
    results = {e["n"]: e for e in resp.json()["results"]}
    assert results[3]["found"] is True
    assert results[4]["found"] is False and results[4]["certificate"] is None


def test_handlers_shared_with_http_layer():
    """The in-process handler and the HTTP endpoint return identical data."""
    req = schemas.CountStRequest(field="3", n=3)
    direct = service.handle_count_st(req).model_dump()
    via_http = TestClient(service.app).post(
        "/count-st", json=req.model_dump()
    ).json()
    assert direct == via_http


def test_handler_raises_package_errors():
    with pytest.raises(EvenCharacteristicError):
        service.handle_genpair(schemas.GenPairRequest(field="4", n=3))
    with pytest.raises(ParseError):
        service.handle_search_f2(
            schemas.SearchF2Request(n_values=[3], trials=1, field="3")
        )
