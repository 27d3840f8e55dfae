"""Derived per-timestep series used as query criteria and variable thresholds.

Conventions:
- rank 1 = largest value; ties get competition ranking (1, 1, 3)
- net change over delta steps: v[t] - v[t-delta]
- percentage change: 100 * (v[t] - v[t-delta]) / |v[t-delta]|, undefined at zero denominator
- windowed variance: population variance over a centered window of odd length,
  truncated at the series edges
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidQueryError
from .model import Dataset

OptSeries = tuple[float | None, ...]


class CriterionKind(str, Enum):
    VALUE = "value"
    RANK = "rank"
    NET_CHANGE = "net_change"
    PCT_CHANGE = "pct_change"
    VARIANCE = "variance"


@dataclass(frozen=True)
class Criterion:
    kind: CriterionKind
    delta: int | None = None  # net/pct change lookback, timesteps
    window: int | None = None  # variance window length, odd

    def validate(self, num_timesteps: int) -> None:
        if self.kind in (CriterionKind.NET_CHANGE, CriterionKind.PCT_CHANGE):
            if self.delta is None or not 1 <= self.delta < num_timesteps:
                raise InvalidQueryError(
                    f"delta must be in [1, {num_timesteps - 1}], got {self.delta}",
                    reason="invalid-delta",
                )
        if self.kind is CriterionKind.VARIANCE:
            if (
                self.window is None
                or self.window % 2 == 0
                or not 1 <= self.window <= num_timesteps
            ):
                raise InvalidQueryError(
                    f"window must be odd and in [1, {num_timesteps}], got {self.window}",
                    reason="invalid-window",
                )


@dataclass(frozen=True)
class DerivedMatrix:
    """Same shape as the source dataset; rows keyed by case id in dataset order."""

    criterion: Criterion
    case_ids: tuple[str, ...]
    values: tuple[OptSeries, ...]

    def row(self, case_id: str) -> OptSeries:
        return self.values[self.case_ids.index(case_id)]


def _matrix(dataset: Dataset, criterion: Criterion, rows) -> DerivedMatrix:
    return DerivedMatrix(
        criterion=criterion,
        case_ids=dataset.case_ids,
        values=tuple(tuple(r) for r in rows),
    )


def compute_rank_matrix(dataset: Dataset) -> DerivedMatrix:
    """Competition rank of each case at each timestep; rank 1 = largest value."""
    t_count = dataset.num_timesteps
    rows = [[None] * t_count for _ in dataset.cases]
    for t in range(t_count):
        present = sorted(
            (c.values[t] for c in dataset.cases if c.values[t] is not None), reverse=True
        )
        # competition ranking: rank of v = 1 + count strictly greater = first
        # position of v in the descending sort
        rank_of: dict[float, float] = {}
        for pos, v in enumerate(present):
            if v not in rank_of:
                rank_of[v] = float(pos + 1)
        for i, case in enumerate(dataset.cases):
            v = case.values[t]
            if v is not None:
                rows[i][t] = rank_of[v]
    return _matrix(dataset, Criterion(CriterionKind.RANK), rows)


def compute_net_change(dataset: Dataset, delta: int) -> DerivedMatrix:
    criterion = Criterion(CriterionKind.NET_CHANGE, delta=delta)
    criterion.validate(dataset.num_timesteps)
    rows = []
    for case in dataset.cases:
        v = case.values
        rows.append(
            [
                v[t] - v[t - delta]
                if t >= delta and v[t] is not None and v[t - delta] is not None
                else None
                for t in range(len(v))
            ]
        )
    return _matrix(dataset, criterion, rows)


def compute_pct_change(dataset: Dataset, delta: int) -> DerivedMatrix:
    criterion = Criterion(CriterionKind.PCT_CHANGE, delta=delta)
    criterion.validate(dataset.num_timesteps)
    rows = []
    for case in dataset.cases:
        v = case.values
        row = []
        for t in range(len(v)):
            if t >= delta and v[t] is not None and v[t - delta] is not None and v[t - delta] != 0:
                row.append(100.0 * (v[t] - v[t - delta]) / abs(v[t - delta]))
            else:
                row.append(None)
        rows.append(row)
    return _matrix(dataset, criterion, rows)


def compute_windowed_variance(dataset: Dataset, window: int) -> DerivedMatrix:
    criterion = Criterion(CriterionKind.VARIANCE, window=window)
    criterion.validate(dataset.num_timesteps)
    half = (window - 1) // 2
    t_count = dataset.num_timesteps
    rows = []
    for case in dataset.cases:
        v = case.values
        row = []
        for t in range(t_count):
            chunk = [x for x in v[max(0, t - half) : min(t_count, t + half + 1)] if x is not None]
            if not chunk:
                row.append(None)
                continue
            mean = sum(chunk) / len(chunk)
            row.append(sum((x - mean) ** 2 for x in chunk) / len(chunk))
        rows.append(row)
    return _matrix(dataset, criterion, rows)


def compute_aggregate_series(dataset: Dataset) -> OptSeries:
    """Per-timestep mean over cases with a present value; missing when none has one."""
    out = []
    for t in range(dataset.num_timesteps):
        present = [c.values[t] for c in dataset.cases if c.values[t] is not None]
        out.append(sum(present) / len(present) if present else None)
    return tuple(out)


def ego_series(dataset: Dataset, ego_id: str) -> OptSeries:
    """The designated reference case's value sequence, verbatim."""
    return dataset.case(ego_id).values


def derive(dataset: Dataset, criterion: Criterion) -> DerivedMatrix:
    """Dispatch a criterion to the matching computation; Value is an identity copy."""
    criterion.validate(dataset.num_timesteps)
    kind = criterion.kind
    if kind is CriterionKind.VALUE:
        return _matrix(dataset, criterion, [c.values for c in dataset.cases])
    if kind is CriterionKind.RANK:
        return compute_rank_matrix(dataset)
    if kind is CriterionKind.NET_CHANGE:
        return compute_net_change(dataset, criterion.delta)
    if kind is CriterionKind.PCT_CHANGE:
        return compute_pct_change(dataset, criterion.delta)
    if kind is CriterionKind.VARIANCE:
        return compute_windowed_variance(dataset, criterion.window)
    raise InvalidQueryError(f"unknown criterion kind {kind!r}", reason="invalid-criterion")
