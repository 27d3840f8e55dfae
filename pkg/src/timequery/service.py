"""HTTP JSON API: dataset upload/metadata/series plus the stateless query endpoint.

The dataset registry lives in memory; set a snapshot directory (env
TIMEQUERY_SNAPSHOT_DIR or create_app argument) to persist uploaded CSVs across
restarts as a convenience.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .errors import InvalidQueryError, ParseError, UnknownCaseError
from .ingest import IngestReport, parse_wide_csv
from .model import Dataset
from .pipeline import canonical_json, encode_response, parse_request, run_query

DEFAULT_MAX_UPLOAD = 16 * 1024 * 1024


@dataclass
class _Entry:
    dataset: Dataset
    report: IngestReport


class DatasetRegistry:
    """Concurrent-read, exclusive-write store of uploaded datasets."""

    def __init__(self, snapshot_dir: str | Path | None = None):
        self._lock = threading.RLock()
        self._entries: dict[str, _Entry] = {}
        self._counter = 0
        self._snapshot_dir = Path(snapshot_dir) if snapshot_dir else None
        if self._snapshot_dir:
            self._snapshot_dir.mkdir(parents=True, exist_ok=True)
            self._restore()

    def fresh_id(self) -> str:
        with self._lock:
            self._counter += 1
            return f"d{self._counter}"

    def add(self, dataset: Dataset, report: IngestReport,
            csv_bytes: bytes | None = None, has_category_column: bool = False) -> None:
        with self._lock:
            self._entries[dataset.id] = _Entry(dataset, report)
        if self._snapshot_dir and csv_bytes is not None:
            (self._snapshot_dir / f"{dataset.id}.csv").write_bytes(csv_bytes)
            meta = {"has_category_column": has_category_column}
            (self._snapshot_dir / f"{dataset.id}.json").write_text(json.dumps(meta))

    def get(self, dataset_id: str) -> _Entry | None:
        with self._lock:
            return self._entries.get(dataset_id)

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._entries)

    def _restore(self) -> None:
        for csv_path in sorted(self._snapshot_dir.glob("*.csv")):
            meta_path = csv_path.with_suffix(".json")
            has_cat = False
            if meta_path.exists():
                has_cat = json.loads(meta_path.read_text()).get("has_category_column", False)
            try:
                dataset, report = parse_wide_csv(
                    csv_path.read_bytes(), has_category_column=has_cat, dataset_id=csv_path.stem
                )
            except ParseError:
                continue
            with self._lock:
                self._entries[dataset.id] = _Entry(dataset, report)


def _error(status: int, reason: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"reason": reason, "detail": detail})


def create_app(
    registry: DatasetRegistry | None = None,
    max_upload_bytes: int | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    if registry is None:
        registry = DatasetRegistry(snapshot_dir=os.environ.get("TIMEQUERY_SNAPSHOT_DIR"))
    if max_upload_bytes is None:
        max_upload_bytes = int(os.environ.get("TIMEQUERY_MAX_UPLOAD_BYTES", DEFAULT_MAX_UPLOAD))

    app = FastAPI(title="timequery", version="0.1.0")
    app.state.registry = registry

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/datasets")
    def list_datasets():
        out = []
        for dataset_id in registry.ids():
            entry = registry.get(dataset_id)
            out.append(
                {
                    "id": dataset_id,
                    "case_count": entry.report.case_count,
                    "timestep_count": entry.report.timestep_count,
                }
            )
        return {"datasets": out}

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request, has_category_column: bool = False):
        body = await request.body()
        if len(body) > max_upload_bytes:
            return _error(413, "too-large", f"upload exceeds {max_upload_bytes} bytes")
        if not body:
            return _error(400, "empty-body", "request body must contain CSV data")
        dataset_id = registry.fresh_id()
        try:
            dataset, report = parse_wide_csv(
                body, has_category_column=has_category_column, dataset_id=dataset_id
            )
        except ParseError as exc:
            return _error(400, "parse-error", str(exc))
        registry.add(dataset, report, csv_bytes=body, has_category_column=has_category_column)
        return {
            "dataset_id": dataset_id,
            "report": {
                "case_count": report.case_count,
                "timestep_count": report.timestep_count,
                "missing_cell_count": report.missing_cell_count,
                "category_count": report.category_count,
                "warnings": report.warnings,
            },
        }

    @app.get("/datasets/{dataset_id}")
    def dataset_metadata(dataset_id: str):
        entry = registry.get(dataset_id)
        if entry is None:
            return _error(404, "unknown-dataset", f"no dataset {dataset_id!r}")
        ds = entry.dataset
        return {
            "id": ds.id,
            "time_labels": list(ds.axis.labels),
            "cases": [
                {"id": c.id, "name": c.name, "category": c.category} for c in ds.cases
            ],
            "case_count": entry.report.case_count,
            "timestep_count": entry.report.timestep_count,
            "missing_cell_count": entry.report.missing_cell_count,
            "categories": list(ds.categories),
        }

    @app.get("/datasets/{dataset_id}/series")
    def dataset_series(dataset_id: str, cases: str | None = None):
        entry = registry.get(dataset_id)
        if entry is None:
            return _error(404, "unknown-dataset", f"no dataset {dataset_id!r}")
        ds = entry.dataset
        if cases is None:
            wanted = list(ds.case_ids)
        else:
            wanted = [c for c in cases.split(",") if c]
            for cid in wanted:
                if not ds.has_case(cid):
                    return _error(400, "unknown-case", f"no case {cid!r}")
        return {
            "time_labels": list(ds.axis.labels),
            "series": {cid: list(ds.case(cid).values) for cid in wanted},
        }

    @app.post("/datasets/{dataset_id}/query")
    async def query_dataset(dataset_id: str, request: Request):
        entry = registry.get(dataset_id)
        if entry is None:
            return _error(404, "unknown-dataset", f"no dataset {dataset_id!r}")
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return _error(400, "bad-json", str(exc))
        try:
            parsed = parse_request(body)
            result = run_query(entry.dataset, parsed)
        except UnknownCaseError as exc:
            return _error(422, "unknown-ego", str(exc))
        except InvalidQueryError as exc:
            return _error(422, exc.reason, str(exc))
        document = encode_response(entry.dataset, parsed, result)
        return Response(content=canonical_json(document), media_type="application/json")

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
