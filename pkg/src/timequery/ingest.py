"""Wide-format CSV ingestion: rows are cases, columns are timesteps.

Header is ``id[,category],t0,t1,...``. Empty cells become missing values.
Category column is optional; without it every case belongs to the implicit
category ``(none)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .model import DataCase, Dataset, TimeAxis

NO_CATEGORY = "(none)"


@dataclass
class IngestReport:
    case_count: int
    timestep_count: int
    missing_cell_count: int
    category_count: int
    warnings: list[str] = field(default_factory=list)


def _parse_cell(text: str, row: int, column: str) -> float | None:
    text = text.strip()
    if text == "":
        return None
    # float() tolerates underscores and nan/inf spellings; neither is valid input
    if "_" in text:
        raise ParseError(f"non-numeric cell {text!r}", row=row, column=column)
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"non-numeric cell {text!r}", row=row, column=column) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite cell {text!r}", row=row, column=column)
    return value


def parse_wide_csv(
    data: bytes | str,
    has_category_column: bool = False,
    dataset_id: str = "dataset",
) -> tuple[Dataset, IngestReport]:
    """Parse wide CSV bytes into a Dataset plus an ingest report.

    Raises ParseError on ragged rows, non-numeric cells, duplicate case ids,
    duplicate time labels, or zero data rows.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    else:
        text = data

    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]  # drop blank lines
    if not rows:
        raise ParseError("empty input: no header row")

    header = rows[0]
    meta_cols = 2 if has_category_column else 1
    if len(header) < meta_cols + 1:
        raise ParseError("header must contain at least one time label")
    time_labels = [h.strip() for h in header[meta_cols:]]
    if len(set(time_labels)) != len(time_labels):
        raise ParseError("duplicate time label in header")
    axis = TimeAxis(tuple(time_labels))

    if len(rows) == 1:
        raise ParseError("no data rows")

    cases: list[DataCase] = []
    seen_ids: set[str] = set()
    missing = 0
    for rownum, row in enumerate(rows[1:], start=1):
        if len(row) != len(header):
            raise ParseError(
                f"ragged row: {len(row)} cells, header has {len(header)}", row=rownum
            )
        case_id = row[0].strip()
        if case_id == "":
            raise ParseError("empty case id", row=rownum, column=header[0])
        if case_id in seen_ids:
            raise ParseError(f"duplicate case id {case_id!r}", row=rownum)
        seen_ids.add(case_id)
        category = row[1].strip() if has_category_column else ""
        values = []
        for label, cell in zip(time_labels, row[meta_cols:]):
            value = _parse_cell(cell, row=rownum, column=label)
            if value is None:
                missing += 1
            values.append(value)
        cases.append(
            DataCase(
                id=case_id,
                name=case_id,
                category=category or NO_CATEGORY,
                values=tuple(values),
            )
        )

    dataset = Dataset(id=dataset_id, axis=axis, cases=tuple(cases))
    report = IngestReport(
        case_count=len(cases),
        timestep_count=len(axis),
        missing_cell_count=missing,
        category_count=len(dataset.categories),
    )
    return dataset, report


def load_dataset_file(path: str | Path, has_category_column: bool = False):
    """Read a file and delegate to parse_wide_csv. I/O errors pass through as OSError."""
    path = Path(path)
    data = path.read_bytes()
    return parse_wide_csv(data, has_category_column=has_category_column, dataset_id=path.stem)


def serialize_wide_csv(dataset: Dataset, include_category: bool = True) -> bytes:
    """Inverse of parse_wide_csv: re-parsing the output yields an equal dataset."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["id"] + (["category"] if include_category else []) + list(dataset.axis.labels)
    writer.writerow(header)
    for case in dataset.cases:
        row = [case.id]
        if include_category:
            row.append(case.category or "")
        row.extend("" if v is None else repr(v) for v in case.values)
        writer.writerow(row)
    return out.getvalue().encode("utf-8")
