"""Command-line interface: run queries in batch, export segments, launch the service.

All flags have long forms only. Documents go to stdout (or --output);
diagnostics go to stderr. Exit codes: 0 ok, 1 parse/validation error,
2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import socket
import sys
from pathlib import Path

from .errors import ParseError, TimeQueryError, UnknownLabelError
from .ingest import load_dataset_file
from .model import Dataset
from .pipeline import canonical_json, encode_response, parse_request, run_query

_THRESHOLD_RE = re.compile(r"^(agg|ego:(?P<ego>[^+-]+))(?P<off>[+-]\d+(\.\d+)?)?$")


def _threshold_to_json(text: str) -> dict:
    try:
        return {"kind": "constant", "value": float(text)}
    except ValueError:
        pass
    m = _THRESHOLD_RE.match(text)
    if not m:
        raise ValueError(
            f"bad threshold {text!r}: expected a number, 'agg+OFF', or 'ego:ID+OFF'"
        )
    offset = float(m.group("off") or 0.0)
    if m.group("ego") is not None:
        return {"kind": "ego_offset", "ego_id": m.group("ego"), "offset": offset}
    return {"kind": "aggregate_offset", "offset": offset}


def _window_to_indices(text: str, dataset: Dataset) -> list[int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"bad window {text!r}: expected START:END")
    out = []
    for part in parts:
        try:
            out.append(dataset.axis.index_of(part))
        except UnknownLabelError:
            out.append(int(part))
    return out


def _build_request_body(args, dataset: Dataset) -> dict:
    body: dict = {
        "criterion": {
            "kind": args.criterion.replace("-", "_"),
            "delta": args.delta,
            "window": args.window_size,
        }
    }
    if args.threshold is not None:
        if args.lower is not None or args.upper is not None:
            raise ValueError("--threshold and --lower/--upper are mutually exclusive")
        body["mode"] = "two_range"
        body["threshold"] = _threshold_to_json(args.threshold)
    elif args.lower is not None and args.upper is not None:
        body["mode"] = "three_range"
        body["lower"] = _threshold_to_json(args.lower)
        body["upper"] = _threshold_to_json(args.upper)
    else:
        raise ValueError("set --threshold, or both --lower and --upper")

    colors = {}
    for item in args.color or ["low=green"]:
        if "=" not in item:
            raise ValueError(f"bad --color {item!r}: expected RANGE=TOKEN")
        key, token = item.split("=", 1)
        colors[key.strip()] = token.strip()
    body["colors"] = colors
    body["filter"] = {"min_len": args.filter_min, "max_len": args.filter_max}
    if args.sort is not None:
        body["sort"] = {
            "color": args.sort,
            "window": _window_to_indices(args.sort_window, dataset) if args.sort_window else None,
            "group_mode": args.group,
            "hide_uncolored": args.hide_uncolored,
        }
    else:
        body["sort"] = None
    return body


def _segments_csv(dataset: Dataset, document: dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["case_id", "start_label", "end_label", "color"])
    labels = dataset.axis.labels
    for group in document["order"]:
        for cid in group["cases"]:
            for seg in document["cases"][cid]["segments"]:
                writer.writerow([cid, labels[seg["start"]], labels[seg["end"]], seg["color"]])
    return out.getvalue()


def _add_query_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="wide CSV dataset file")
    parser.add_argument("--has-category-column", action="store_true")
    parser.add_argument(
        "--criterion",
        default="value",
        choices=["value", "rank", "net-change", "pct-change", "variance"],
    )
    parser.add_argument("--delta", type=int, help="lookback for net/pct change")
    parser.add_argument("--window-size", type=int, help="odd window for variance")
    parser.add_argument("--threshold", help="two-range threshold: NUMBER, agg+OFF, ego:ID+OFF")
    parser.add_argument("--lower", help="three-range lower threshold")
    parser.add_argument("--upper", help="three-range upper threshold")
    parser.add_argument(
        "--color",
        action="append",
        metavar="RANGE=TOKEN",
        help="e.g. low=green, high=red, mid=hidden (default: low=green)",
    )
    parser.add_argument("--filter-min", type=int, help="demote colored segments shorter than this")
    parser.add_argument("--filter-max", type=int, help="demote colored segments longer than this")
    parser.add_argument("--sort", metavar="COLOR", help="sort by colored length of this token")
    parser.add_argument("--sort-window", metavar="START:END", help="time labels or indices")
    parser.add_argument("--group", action="store_true", help="group cases by category")
    parser.add_argument("--hide-uncolored", action="store_true")
    parser.add_argument("--output", help="write the document here instead of stdout")


def _run_query_command(args, force_csv: bool = False) -> int:
    try:
        dataset, _report = load_dataset_file(
            args.data, has_category_column=args.has_category_column
        )
    except OSError as exc:
        print(f"error: cannot read {args.data}: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        body = _build_request_body(args, dataset)
        request = parse_request(body)
        result = run_query(dataset, request)
    except (ValueError, TimeQueryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    document = encode_response(dataset, request, result)
    fmt = "csv" if force_csv else args.format
    if fmt == "csv":
        payload = _segments_csv(dataset, document).encode("utf-8")
    else:
        payload = canonical_json(document)

    try:
        if args.output:
            Path(args.output).write_bytes(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def _run_serve_command(args) -> int:
    import uvicorn

    from .service import DatasetRegistry, create_app

    registry = DatasetRegistry(snapshot_dir=args.snapshot_dir)
    for path in args.data or []:
        try:
            dataset, report = load_dataset_file(
                path, has_category_column=args.has_category_column
            )
        except OSError as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return 2
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        registry.add(dataset, report)

    static_dir = args.ui_dir or _default_ui_dir()
    app = create_app(registry=registry, static_dir=static_dir)

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        sock.close()
        return 2
    host, port = sock.getsockname()[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    if args.open:
        print(f"ui: http://{host}:{port}/ui/", flush=True)

    config = uvicorn.Config(app, log_level="warning")
    server = uvicorn.Server(config)
    server.run(sockets=[sock])
    return 0


def _default_ui_dir() -> str | None:
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="timequery")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="run a query and emit the result document")
    _add_query_flags(q)
    q.add_argument("--format", default="json", choices=["json", "csv"])

    e = sub.add_parser("export", help="run a query and emit one CSV row per segment")
    _add_query_flags(e)

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8787)
    s.add_argument("--data", action="append", help="preload a dataset file (repeatable)")
    s.add_argument("--has-category-column", action="store_true")
    s.add_argument("--snapshot-dir", help="persist uploads to this directory")
    s.add_argument("--ui-dir", help="serve these static assets at /ui")
    s.add_argument("--open", action="store_true", help="print the UI URL")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "query":
        return _run_query_command(args)
    if args.command == "export":
        return _run_query_command(args, force_csv=True)
    return _run_serve_command(args)


if __name__ == "__main__":
    sys.exit(main())
