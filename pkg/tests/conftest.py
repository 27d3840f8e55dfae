import random
from pathlib import Path

import pytest

from timequery import DataCase, Dataset, TimeAxis, load_dataset_file

FIXTURE = Path(__file__).resolve().parents[1] / "src" / "timequery" / "data" / "synthetic12.csv"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def make_dataset(values_by_case, labels=None, categories=None, dataset_id="test"):
    """Build a Dataset from {case_id: [values...]}; None marks missing cells."""
    first = next(iter(values_by_case.values()))
    labels = labels or [f"t{i}" for i in range(len(first))]
    cases = [
        DataCase(
            id=cid,
            name=cid,
            values=tuple(vals),
            category=(categories or {}).get(cid),
        )
        for cid, vals in values_by_case.items()
    ]
    return Dataset(id=dataset_id, axis=TimeAxis(tuple(labels)), cases=tuple(cases))


def random_dataset(rng: random.Random, n_cases=20, n_steps=30, missing_rate=0.05, categories=None):
    values = {}
    cats = {}
    for i in range(n_cases):
        cid = f"c{i:03d}"
        row = [
            None if rng.random() < missing_rate else round(rng.uniform(-100, 100), 3)
            for _ in range(n_steps)
        ]
        values[cid] = row
        if categories:
            cats[cid] = rng.choice(categories)
    return make_dataset(values, categories=cats if categories else None)


@pytest.fixture
def synthetic12():
    dataset, report = load_dataset_file(FIXTURE, has_category_column=True)
    return dataset, report


@pytest.fixture
def fixture_path():
    return FIXTURE
