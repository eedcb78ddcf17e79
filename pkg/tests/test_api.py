import pytest
from fastapi.testclient import TestClient

from src.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "service": "quantum-double-api"}


def test_group_report(client):
    response = client.get("/api/groups/s3")
    assert response.status_code == 200
    data = response.json()
    assert data["order"] == 6
    assert [c["normalizer_order"] for c in data["classes"]] == [6, 3, 2]
    assert [i["dim"] for i in data["character_table"]["irreps"]] == [1, 1, 2]


def test_unknown_group(client):
    response = client.get("/api/groups/bogus")
    assert response.status_code == 422
    assert "Unknown built-in group" in response.json()["detail"]


def test_anyons(client):
    rows = client.get("/api/anyons/s3").json()
    assert [r["label"] for r in rows] == list("ABCDEFGH")
    assert rows[3]["type"] == "fluxon"


def test_diagram_without_couplings(client):
    data = client.post("/api/sectors/s3/diagram").json()
    assert len(data["cells"]) == 9
    assert all(cell["energy"] is None for cell in data["cells"])


def test_diagram_with_couplings(client):
    body = {"alpha": {"1": 0, "-1": 1, "2": 2}, "beta": {"e": 0, "x": 3, "y": 5}}
    data = client.post("/api/sectors/s3/diagram", json=body).json()
    assert [cell["energy"] for cell in data["cells"]] == [0, 1, 2, 3, 4, 5, 5, 6, 7]


def test_site_spectrum(client):
    body = {"alpha": {"1": 0, "-1": 1}, "beta": {"0": 0, "1": 2}}
    response = client.post("/api/hamiltonians/z2/site-spectrum", json=body)
    assert response.status_code == 200
    levels = response.json()["levels"]
    assert [level["multiplicity"] for level in levels] == [16, 16, 16, 16]
    assert levels[0]["sectors"] == ["0/1"]


def test_site_spectrum_incomplete_couplings(client):
    response = client.post("/api/hamiltonians/z2/site-spectrum", json={"alpha": {"1": 0}, "beta": {}})
    assert response.status_code == 422


def test_site_spectrum_capacity(client):
    body = {"alpha": {}, "beta": {}}
    response = client.post("/api/hamiltonians/s4/site-spectrum", json=body)
    assert response.status_code == 413


def test_verify_single_check(client):
    response = client.get("/api/verify/z2", params={"check": "braiding"})
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] is True
    assert [c["name"] for c in data["checks"]] == ["braiding"]


def test_verify_unknown_check(client):
    response = client.get("/api/verify/z2", params={"check": "nonsense"})
    assert response.status_code == 400


def test_verify_tolerance_out_of_range(client):
    response = client.get("/api/verify/z2", params={"tolerance": 0.5})
    assert response.status_code == 422
