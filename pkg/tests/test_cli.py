import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from timequery.cli import main

from .conftest import FIXTURE, GOLDEN_DIR


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


QUERY_ARGS = [
    "query",
    "--data", str(FIXTURE),
    "--has-category-column",
    "--criterion", "rank",
    "--threshold", "3",
    "--color", "low=green",
    "--sort", "green",
    "--hide-uncolored",
]


def test_query_matches_golden(capsys):
    code, out, _ = _run(capsys, QUERY_ARGS)
    assert code == 0
    expected = (GOLDEN_DIR / "two_range_rank.json").read_bytes()
    assert out.encode() == expected


def test_query_matches_api_response(capsys):
    # single source of truth: CLI document equals the service's for the same params
    from fastapi.testclient import TestClient

    from timequery import load_dataset_file
    from timequery.service import DatasetRegistry, create_app

    registry = DatasetRegistry()
    registry.add(*load_dataset_file(FIXTURE, has_category_column=True))
    client = TestClient(create_app(registry=registry))
    body = json.loads((GOLDEN_DIR / "requests.json").read_text())["windowed_group_sort"]
    api_bytes = client.post("/datasets/synthetic12/query", json=body).content

    code, out, _ = _run(capsys, [
        "query", "--data", str(FIXTURE), "--has-category-column",
        "--criterion", "value", "--threshold", "50",
        "--color", "low=red", "--color", "high=context",
        "--filter-min", "2",
        "--sort", "red", "--sort-window", "2010:2019",
        "--group", "--hide-uncolored",
    ])
    assert code == 0
    assert out.encode() == api_bytes


def test_csv_export(capsys):
    code, out, _ = _run(capsys, ["export"] + QUERY_ARGS[1:])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "case_id,start_label,end_label,color"
    # start/end are time labels, not indices
    first = lines[1].split(",")
    assert first[1] in [str(y) for y in range(2000, 2020)]


def test_three_range_ego_flags(capsys):
    code, out, _ = _run(capsys, [
        "query", "--data", str(FIXTURE), "--has-category-column",
        "--lower", "ego:C05-1", "--upper", "ego:C05+1",
        "--color", "low=red", "--color", "high=green", "--color", "mid=context",
        "--sort", "green",
    ])
    assert code == 0
    assert out.encode() == (GOLDEN_DIR / "three_range_ego.json").read_bytes()


def test_bad_threshold_exits_1(capsys):
    code, _, err = _run(
        capsys,
        ["query", "--data", str(FIXTURE), "--has-category-column", "--threshold", "abc"],
    )
    assert code == 1
    assert "threshold" in err


def test_missing_file_exits_2(capsys):
    code, _, err = _run(capsys, ["query", "--data", "/nope/missing.csv", "--threshold", "1"])
    assert code == 2
    assert "cannot read" in err


def test_crossed_thresholds_exit_1(capsys):
    code, _, err = _run(capsys, [
        "query", "--data", str(FIXTURE), "--has-category-column",
        "--lower", "10", "--upper", "5", "--color", "low=red",
    ])
    assert code == 1
    assert "threshold" in err


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "doc.json"
    code, out, _ = _run(capsys, QUERY_ARGS + ["--output", str(out_path)])
    assert code == 0
    assert out == ""
    assert out_path.read_bytes() == (GOLDEN_DIR / "two_range_rank.json").read_bytes()


@pytest.mark.slow
def test_serve_ephemeral_port_and_preload(tmp_path):
    proc = subprocess.Popen(
        [sys.executable, "-m", "timequery.cli", "serve", "--port", "0",
         "--data", str(FIXTURE), "--has-category-column"],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
    )
    try:
        line = proc.stdout.readline().strip()
        assert line.startswith("listening on http://")
        url = line.split(" ")[-1]
        deadline = time.time() + 10
        datasets = None
        while time.time() < deadline:
            try:
                with urllib.request.urlopen(f"{url}/datasets", timeout=1) as resp:
                    datasets = json.load(resp)
                break
            except OSError:
                time.sleep(0.1)
        assert datasets is not None, "server did not come up"
        assert [d["id"] for d in datasets["datasets"]] == ["synthetic12"]
    finally:
        proc.terminate()
        proc.wait(timeout=10)


@pytest.mark.slow
def test_serve_occupied_port_exits_2():
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    blocker.listen(1)
    port = blocker.getsockname()[1]
    try:
        proc = subprocess.run(
            [sys.executable, "-m", "timequery.cli", "serve", "--port", str(port)],
            capture_output=True,
            text=True,
            timeout=30,
        )
        assert proc.returncode == 2
        assert "cannot bind" in proc.stderr
    finally:
        blocker.close()
