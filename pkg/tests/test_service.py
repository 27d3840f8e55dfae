import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from timequery import load_dataset_file
from timequery.service import DatasetRegistry, create_app

from .conftest import FIXTURE, GOLDEN_DIR


@pytest.fixture
def client():
    return TestClient(create_app(registry=DatasetRegistry()))


@pytest.fixture
def loaded_client():
    """Client whose registry holds the fixture under its file-stem id."""
    registry = DatasetRegistry()
    dataset, report = load_dataset_file(FIXTURE, has_category_column=True)
    registry.add(dataset, report)
    return TestClient(create_app(registry=registry))


def _upload(client, payload=None, has_cat=True):
    payload = payload if payload is not None else FIXTURE.read_bytes()
    return client.post(f"/datasets?has_category_column={str(has_cat).lower()}", content=payload)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_upload_fixture(client):
    resp = _upload(client)
    assert resp.status_code == 201
    body = resp.json()
    assert body["report"]["case_count"] == 12
    assert body["report"]["category_count"] == 3
    assert body["dataset_id"]


def test_upload_ragged_csv(client):
    resp = _upload(client, payload=b"id,1900\nSWE,1,2\n", has_cat=False)
    assert resp.status_code == 400
    assert resp.json()["reason"] == "parse-error"
    assert "row 1" in resp.json()["detail"]


def test_upload_empty_body(client):
    assert _upload(client, payload=b"").status_code == 400


def test_upload_too_large():
    client = TestClient(create_app(registry=DatasetRegistry(), max_upload_bytes=10))
    assert _upload(client, payload=b"x" * 100).status_code == 413


def test_metadata(client):
    ds_id = _upload(client).json()["dataset_id"]
    resp = client.get(f"/datasets/{ds_id}")
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["time_labels"]) == 20
    assert len(body["cases"]) == 12
    assert "values" not in json.dumps(body["cases"])


def test_metadata_unknown_id(client):
    assert client.get("/datasets/nope").status_code == 404


def test_metadata_without_categories(client):
    payload = b"id,a,b\nX,1,2\nY,3,4\n"
    ds_id = _upload(client, payload=payload, has_cat=False).json()["dataset_id"]
    body = client.get(f"/datasets/{ds_id}").json()
    assert all(c["category"] == "(none)" for c in body["cases"])


def test_series_endpoint(client):
    ds_id = _upload(client).json()["dataset_id"]
    resp = client.get(f"/datasets/{ds_id}/series?cases=C01")
    assert resp.status_code == 200
    series = resp.json()["series"]
    assert list(series) == ["C01"]
    assert len(series["C01"]) == 20

    everyone = client.get(f"/datasets/{ds_id}/series").json()["series"]
    assert len(everyone) == 12

    assert client.get(f"/datasets/{ds_id}/series?cases=XXX").status_code == 400
    assert client.get("/datasets/nope/series").status_code == 404


def test_list_datasets(loaded_client):
    body = loaded_client.get("/datasets").json()
    assert [d["id"] for d in body["datasets"]] == ["synthetic12"]


def test_query_matches_goldens(loaded_client):
    requests = json.loads((GOLDEN_DIR / "requests.json").read_text())
    for name, body in requests.items():
        resp = loaded_client.post("/datasets/synthetic12/query", json=body)
        assert resp.status_code == 200, resp.text
        assert resp.content == (GOLDEN_DIR / f"{name}.json").read_bytes(), name


def test_query_crossed_thresholds(loaded_client):
    body = {
        "criterion": {"kind": "value"},
        "mode": "three_range",
        "lower": {"kind": "constant", "value": 10},
        "upper": {"kind": "constant", "value": 5},
        "colors": {"low": "red"},
    }
    resp = loaded_client.post("/datasets/synthetic12/query", json=body)
    assert resp.status_code == 422
    assert resp.json()["reason"] == "crossed-thresholds"


def test_query_unknown_ego(loaded_client):
    body = {
        "criterion": {"kind": "value"},
        "mode": "two_range",
        "threshold": {"kind": "ego_offset", "ego_id": "XXX", "offset": 0},
        "colors": {"low": "red"},
    }
    resp = loaded_client.post("/datasets/synthetic12/query", json=body)
    assert resp.status_code == 422
    assert resp.json()["reason"] == "unknown-ego"


def test_query_unknown_dataset(loaded_client):
    body = {"criterion": {"kind": "value"}, "mode": "two_range",
            "threshold": {"kind": "constant", "value": 0}, "colors": {"low": "red"}}
    assert loaded_client.post("/datasets/nope/query", json=body).status_code == 404


def test_query_is_stateless_and_concurrent(loaded_client):
    body = json.loads((GOLDEN_DIR / "requests.json").read_text())["two_range_rank"]

    def once(_):
        return loaded_client.post("/datasets/synthetic12/query", json=body).content

    serial = once(0)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(once, range(16)))
    assert all(r == serial for r in results)


def test_snapshot_restore(tmp_path):
    registry = DatasetRegistry(snapshot_dir=tmp_path)
    client = TestClient(create_app(registry=registry))
    ds_id = _upload(client).json()["dataset_id"]

    reborn = DatasetRegistry(snapshot_dir=tmp_path)
    assert reborn.ids() == [ds_id]
    client2 = TestClient(create_app(registry=reborn))
    meta = client2.get(f"/datasets/{ds_id}").json()
    assert meta["case_count"] == 12
    assert meta["categories"]  # has_category_column round-trips through the meta file
