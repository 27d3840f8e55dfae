"""Generate the bundled synthetic12 fixture: 12 cases, 20 steps, 3 categories.

Deterministic (seeded); re-running reproduces the committed file exactly.
"""

import csv
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "timequery" / "data" / "synthetic12.csv"

CATEGORIES = ["alpha", "beta", "gamma"]
LABELS = [str(y) for y in range(2000, 2020)]


def main():
    rng = random.Random(1207)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    rows = []
    for i in range(12):
        case_id = f"C{i + 1:02d}"
        category = CATEGORIES[i % 3]
        level = rng.uniform(30.0, 70.0)
        drift = rng.uniform(-0.8, 1.2)
        values = []
        v = level
        for _t in range(len(LABELS)):
            v += drift + rng.uniform(-2.5, 2.5)
            values.append(round(v, 2))
        # punch a few missing cells into most cases
        for _ in range(rng.randint(0, 3)):
            values[rng.randrange(len(values))] = None
        rows.append([case_id, category] + ["" if x is None else repr(x) for x in values])

    with OUT.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "category"] + LABELS)
        writer.writerows(rows)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
