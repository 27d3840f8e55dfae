"""Wire-level request/response handling and the end-to-end query pipeline.

Both the HTTP service and the CLI go through run_query/encode_response, so
they emit identical documents for identical parameters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .derived import Criterion, CriterionKind
from .engine import QuerySpec, ThreeRange, ThresholdKind, ThresholdSpec, TwoRange, classify
from .errors import InvalidQueryError
from .model import Dataset
from .organize import (
    ColorAssignment,
    OrganizedResult,
    SegmentFilter,
    SortSpec,
    apply_colors_and_filter,
    organize_unsorted,
    sort_cases,
)
from .engine import RangeLabel


@dataclass(frozen=True)
class QueryRequest:
    query: QuerySpec
    colors: ColorAssignment
    seg_filter: SegmentFilter
    sort: SortSpec | None


def _parse_threshold(obj, where: str) -> ThresholdSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidQueryError(f"{where}: threshold must be an object with a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "constant":
            return ThresholdSpec.constant(float(obj["value"]))
        if kind == "aggregate_offset":
            return ThresholdSpec.aggregate_offset(float(obj["offset"]))
        if kind == "ego_offset":
            return ThresholdSpec.ego_offset(str(obj["ego_id"]), float(obj.get("offset", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidQueryError(f"{where}: bad threshold fields: {exc}") from None
    raise InvalidQueryError(f"{where}: unknown threshold kind {kind!r}")


def parse_request(body: dict) -> QueryRequest:
    """Validate and decode a JSON query request body."""
    if not isinstance(body, dict):
        raise InvalidQueryError("request body must be a JSON object")

    crit = body.get("criterion")
    if not isinstance(crit, dict) or "kind" not in crit:
        raise InvalidQueryError("missing criterion.kind")
    try:
        kind = CriterionKind(crit["kind"])
    except ValueError:
        raise InvalidQueryError(f"unknown criterion kind {crit['kind']!r}") from None
    criterion = Criterion(
        kind=kind,
        delta=int(crit["delta"]) if crit.get("delta") is not None else None,
        window=int(crit["window"]) if crit.get("window") is not None else None,
    )

    mode_name = body.get("mode")
    if mode_name == "two_range":
        mode = TwoRange(_parse_threshold(body.get("threshold"), "threshold"))
    elif mode_name == "three_range":
        mode = ThreeRange(
            _parse_threshold(body.get("lower"), "lower"),
            _parse_threshold(body.get("upper"), "upper"),
        )
    else:
        raise InvalidQueryError(f"mode must be 'two_range' or 'three_range', got {mode_name!r}")

    colors_obj = body.get("colors")
    if not isinstance(colors_obj, dict) or not colors_obj:
        raise InvalidQueryError("missing colors mapping")
    mapping = {}
    for key, token in colors_obj.items():
        try:
            label = RangeLabel(key)
        except ValueError:
            raise InvalidQueryError(f"unknown range label {key!r}") from None
        if not isinstance(token, str) or not token:
            raise InvalidQueryError(f"color for {key!r} must be a non-empty string")
        mapping[label] = token
    colors = ColorAssignment(mapping)

    filt_obj = body.get("filter") or {}
    seg_filter = SegmentFilter(
        min_len=int(filt_obj["min_len"]) if filt_obj.get("min_len") is not None else None,
        max_len=int(filt_obj["max_len"]) if filt_obj.get("max_len") is not None else None,
    )

    sort = None
    sort_obj = body.get("sort")
    if sort_obj is not None:
        if not isinstance(sort_obj, dict) or "color" not in sort_obj:
            raise InvalidQueryError("sort must be an object with a 'color'")
        window = sort_obj.get("window")
        if window is not None:
            if not (isinstance(window, (list, tuple)) and len(window) == 2):
                raise InvalidQueryError("sort.window must be a [start, end] pair")
            window = (int(window[0]), int(window[1]))
        sort = SortSpec(
            color=str(sort_obj["color"]),
            window=window,
            group_mode=bool(sort_obj.get("group_mode", False)),
            hide_uncolored=bool(sort_obj.get("hide_uncolored", False)),
        )

    return QueryRequest(query=QuerySpec(criterion, mode), colors=colors, seg_filter=seg_filter, sort=sort)


def run_query(dataset: Dataset, request: QueryRequest) -> OrganizedResult:
    """derive -> resolve thresholds -> classify -> segment -> color/filter -> sort."""
    labels = classify(dataset, request.query)
    display = apply_colors_and_filter(labels, request.colors, request.seg_filter)
    if request.sort is None:
        result = organize_unsorted(dataset, display, request.colors)
    else:
        result = sort_cases(dataset, display, request.colors, request.sort)
    result.threshold_curves = labels.threshold_curves
    return result


def _echo_threshold(spec: ThresholdSpec) -> dict:
    if spec.kind is ThresholdKind.CONSTANT:
        return {"kind": "constant", "value": spec.value}
    if spec.kind is ThresholdKind.AGGREGATE_OFFSET:
        return {"kind": "aggregate_offset", "offset": spec.offset}
    return {"kind": "ego_offset", "ego_id": spec.ego_id, "offset": spec.offset}


def echo_request(request: QueryRequest) -> dict:
    crit = request.query.criterion
    body: dict = {
        "criterion": {"kind": crit.kind.value, "delta": crit.delta, "window": crit.window},
        # Undefined is always context; the forced entry is not part of the request
        "colors": {
            label.value: token
            for label, token in sorted(
                request.colors.mapping.items(), key=lambda kv: kv[0].value
            )
            if label is not RangeLabel.UNDEFINED
        },
        "filter": {"min_len": request.seg_filter.min_len, "max_len": request.seg_filter.max_len},
    }
    mode = request.query.mode
    if isinstance(mode, TwoRange):
        body["mode"] = "two_range"
        body["threshold"] = _echo_threshold(mode.threshold)
    else:
        body["mode"] = "three_range"
        body["lower"] = _echo_threshold(mode.lower)
        body["upper"] = _echo_threshold(mode.upper)
    if request.sort is None:
        body["sort"] = None
    else:
        body["sort"] = {
            "color": request.sort.color,
            "window": list(request.sort.window) if request.sort.window else None,
            "group_mode": request.sort.group_mode,
            "hide_uncolored": request.sort.hide_uncolored,
        }
    return body


def encode_response(dataset: Dataset, request: QueryRequest, result: OrganizedResult) -> dict:
    """QueryResponse document: order, RLE segments, colored lengths, curves, echo."""
    return {
        "dataset_id": dataset.id,
        "order": [
            {"category": cat, "cases": list(members)} for cat, members in result.groups
        ],
        "cases": {
            cid: {
                "segments": [
                    {"start": s.start, "end": s.end, "color": s.color}
                    for s in result.segments[cid]
                ],
                "colored_length": dict(sorted(result.colored_lengths[cid].items())),
            }
            for cid in result.visible_case_ids
        },
        "threshold_curves": [list(curve) for curve in result.threshold_curves],
        "request": echo_request(request),
    }


def canonical_json(document: dict) -> bytes:
    """Deterministic serialization used for golden files and HTTP bodies."""
    return (json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")
