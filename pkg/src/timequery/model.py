"""Core in-memory model: a dataset of named univariate series over a shared time axis.

Time is discrete and uniform. The engine reasons only in integer timestep
indices 0..T-1; axis labels are presentation strings. Missing values are
first-class (``None``) and are never imputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DatasetError, UnknownCaseError, UnknownLabelError


@dataclass(frozen=True)
class TimeAxis:
    """Ordered, unique display labels; index order equals label order."""

    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) == 0:
            raise DatasetError("time axis must have at least one timestep")
        if len(set(self.labels)) != len(self.labels):
            raise DatasetError("time axis labels must be unique")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(label) from None


@dataclass(frozen=True)
class DataCase:
    """One named series. ``values`` has one optional finite number per timestep."""

    id: str
    name: str
    values: tuple[float | None, ...]
    category: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for t, v in enumerate(self.values):
            if v is not None and not math.isfinite(v):
                raise DatasetError(f"case {self.id!r} has non-finite value at timestep {t}")


@dataclass(frozen=True)
class Dataset:
    """Immutable after construction; safe for concurrent reads."""

    id: str
    axis: TimeAxis
    cases: tuple[DataCase, ...]
    _by_id: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cases", tuple(self.cases))
        if not self.cases:
            raise DatasetError("dataset must contain at least one case")
        t = len(self.axis)
        by_id = {}
        for case in self.cases:
            if case.id in by_id:
                raise DatasetError(f"duplicate case id: {case.id!r}")
            if len(case.values) != t:
                raise DatasetError(
                    f"case {case.id!r} has {len(case.values)} values, axis has {t} timesteps"
                )
            by_id[case.id] = case
        object.__setattr__(self, "_by_id", by_id)

    @property
    def num_timesteps(self) -> int:
        return len(self.axis)

    @property
    def case_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.cases)

    @property
    def categories(self) -> tuple[str, ...]:
        """Distinct category strings, in first-appearance order."""
        seen: dict[str, None] = {}
        for c in self.cases:
            if c.category is not None:
                seen.setdefault(c.category, None)
        return tuple(seen)

    def case(self, case_id: str) -> DataCase:
        try:
            return self._by_id[case_id]
        except KeyError:
            raise UnknownCaseError(case_id) from None

    def has_case(self, case_id: str) -> bool:
        return case_id in self._by_id


def value_at(dataset: Dataset, case_id: str, t: int) -> float | None:
    """Stored value of a case at a timestep, ``None`` when the cell is missing."""
    case = dataset.case(case_id)
    if not 0 <= t < dataset.num_timesteps:
        raise IndexError(f"timestep {t} out of range [0, {dataset.num_timesteps})")
    return case.values[t]


def time_index_of(axis: TimeAxis, label: str) -> int:
    """Index of a display label on the axis; inverse of ``axis.labels[i]``."""
    return axis.index_of(label)
