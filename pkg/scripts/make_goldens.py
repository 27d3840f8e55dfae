"""Produce the committed golden query-response files for the bundled fixture.

The documents are computed here by deliberately naive per-timestep code
(independent of the engine's segment/sort implementations) and frozen into
tests/golden/. Tests then require the engine, the HTTP API, and the CLI to
reproduce these bytes exactly.
"""

import json
from pathlib import Path

from timequery import load_dataset_file

ROOT = Path(__file__).resolve().parents[1]
FIXTURE = ROOT / "src" / "timequery" / "data" / "synthetic12.csv"
GOLDEN_DIR = ROOT / "tests" / "golden"

REQUESTS = {
    "two_range_rank": {
        "criterion": {"kind": "rank", "delta": None, "window": None},
        "mode": "two_range",
        "threshold": {"kind": "constant", "value": 3.0},
        "colors": {"low": "green"},
        "filter": {"min_len": None, "max_len": None},
        "sort": {"color": "green", "window": None, "group_mode": False, "hide_uncolored": True},
    },
    "three_range_ego": {
        "criterion": {"kind": "value", "delta": None, "window": None},
        "mode": "three_range",
        "lower": {"kind": "ego_offset", "ego_id": "C05", "offset": -1.0},
        "upper": {"kind": "ego_offset", "ego_id": "C05", "offset": 1.0},
        "colors": {"low": "red", "high": "green", "mid": "context"},
        "filter": {"min_len": None, "max_len": None},
        "sort": {"color": "green", "window": None, "group_mode": False, "hide_uncolored": False},
    },
    "windowed_group_sort": {
        "criterion": {"kind": "value", "delta": None, "window": None},
        "mode": "two_range",
        "threshold": {"kind": "constant", "value": 50.0},
        "colors": {"low": "red", "high": "context"},
        "filter": {"min_len": 2, "max_len": None},
        "sort": {"color": "red", "window": [10, 19], "group_mode": True, "hide_uncolored": True},
    },
}


def naive_rank(dataset):
    rows = {}
    for case in dataset.cases:
        row = []
        for t, v in enumerate(case.values):
            if v is None:
                row.append(None)
            else:
                greater = 0
                for other in dataset.cases:
                    w = other.values[t]
                    if w is not None and w > v:
                        greater += 1
                row.append(float(greater + 1))
        rows[case.id] = row
    return rows


def naive_curves(dataset, req):
    def resolve(spec):
        t_count = dataset.num_timesteps
        if spec["kind"] == "constant":
            return [spec["value"]] * t_count
        if spec["kind"] == "ego_offset":
            base = dataset.case(spec["ego_id"]).values
        else:
            base = []
            for t in range(t_count):
                present = [c.values[t] for c in dataset.cases if c.values[t] is not None]
                base.append(sum(present) / len(present) if present else None)
        return [None if b is None else b + spec["offset"] for b in base]

    if req["mode"] == "two_range":
        return [resolve(req["threshold"])]
    return [resolve(req["lower"]), resolve(req["upper"])]


def naive_labels(dataset, req, curves):
    if req["criterion"]["kind"] == "rank":
        derived = naive_rank(dataset)
    else:
        derived = {c.id: list(c.values) for c in dataset.cases}
    labels = {}
    for case in dataset.cases:
        row = []
        for t in range(dataset.num_timesteps):
            x = derived[case.id][t]
            if x is None or any(curve[t] is None for curve in curves):
                row.append("undefined")
            elif req["mode"] == "two_range":
                row.append("low" if x <= curves[0][t] else "high")
            elif x <= curves[0][t]:
                row.append("low")
            elif x >= curves[1][t]:
                row.append("high")
            else:
                row.append("mid")
        labels[case.id] = row
    return labels


def naive_display(dataset, req, labels):
    """Per-timestep color row -> filter -> re-encode as merged segments."""
    colors = req["colors"]
    out = {}
    for cid, row in labels.items():
        tokens = []
        for lab in row:
            token = colors.get(lab, "context")
            if token == "hidden" or lab == "undefined":
                token = "context"
            tokens.append(token)
        # demote length-filtered colored runs, scanning runs of the label row
        min_len, max_len = req["filter"]["min_len"], req["filter"]["max_len"]
        t = 0
        while t < len(row):
            u = t
            while u < len(row) and row[u] == row[t]:
                u += 1
            run = u - t
            if tokens[t] != "context":
                if (min_len is not None and run < min_len) or (
                    max_len is not None and run > max_len
                ):
                    for k in range(t, u):
                        tokens[k] = "context"
            t = u
        segments = []
        start = 0
        for t in range(1, len(tokens) + 1):
            if t == len(tokens) or tokens[t] != tokens[start]:
                segments.append({"start": start, "end": t - 1, "color": tokens[start]})
                start = t
        out[cid] = (tokens, segments)
    return out


def naive_organize(dataset, req, display):
    sort = req["sort"]
    tokens_assigned = sorted(
        {tok for tok in req["colors"].values() if tok not in ("context", "hidden")}
    )
    window = sort["window"] or [0, dataset.num_timesteps - 1]

    def count(cid, token, w):
        tokens, _ = display[cid]
        return sum(1 for t in range(w[0], w[1] + 1) if tokens[t] == token)

    visible = [c.id for c in dataset.cases]
    if sort["hide_uncolored"]:
        visible = [
            cid
            for cid in visible
            if any(count(cid, tok, [0, dataset.num_timesteps - 1]) > 0 for tok in tokens_assigned)
        ]
    keys = {cid: count(cid, sort["color"], window) for cid in visible}

    if not sort["group_mode"]:
        order = sorted(visible, key=lambda cid: (-keys[cid], cid))
        groups = [{"category": None, "cases": order}]
    else:
        by_cat = {}
        for cid in visible:
            by_cat.setdefault(dataset.case(cid).category or "(none)", []).append(cid)
        means = {cat: sum(keys[c] for c in m) / len(m) for cat, m in by_cat.items()}
        groups = [
            {
                "category": cat,
                "cases": sorted(by_cat[cat], key=lambda cid: (-keys[cid], cid)),
            }
            for cat in sorted(by_cat, key=lambda cat: (-means[cat], cat))
        ]

    cases = {}
    for group in groups:
        for cid in group["cases"]:
            cases[cid] = {
                "segments": display[cid][1],
                "colored_length": {tok: count(cid, tok, window) for tok in tokens_assigned},
            }
    return groups, cases


def build_document(dataset, req):
    curves = naive_curves(dataset, req)
    labels = naive_labels(dataset, req, curves)
    display = naive_display(dataset, req, labels)
    groups, cases = naive_organize(dataset, req, display)
    return {
        "dataset_id": dataset.id,
        "order": groups,
        "cases": cases,
        "threshold_curves": curves,
        "request": req,
    }


def main():
    dataset, _ = load_dataset_file(FIXTURE, has_category_column=True)
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name, req in REQUESTS.items():
        doc = build_document(dataset, req)
        payload = (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()
        path = GOLDEN_DIR / f"{name}.json"
        path.write_bytes(payload)
        print(f"wrote {path}")
    (GOLDEN_DIR / "requests.json").write_text(json.dumps(REQUESTS, indent=2) + "\n")
    print(f"wrote {GOLDEN_DIR / 'requests.json'}")


if __name__ == "__main__":
    main()
