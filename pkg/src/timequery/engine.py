"""Threshold resolution, per-cell range classification, and run-length segmentation.

Boundary convention (documented for UI tooltips): Low is threshold-inclusive
(x <= theta); in three-range mode High is inclusive at the upper threshold
(x >= upper), Mid is strictly between. Cells where the criterion value or any
needed threshold is missing are Undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .derived import (
    Criterion,
    CriterionKind,
    OptSeries,
    compute_aggregate_series,
    derive,
    ego_series,
)
from .errors import CrossedThresholdError, InvalidQueryError
from .model import Dataset


class ThresholdKind(str, Enum):
    CONSTANT = "constant"
    AGGREGATE_OFFSET = "aggregate_offset"
    EGO_OFFSET = "ego_offset"


@dataclass(frozen=True)
class ThresholdSpec:
    kind: ThresholdKind
    value: float | None = None  # constant
    offset: float | None = None  # aggregate/ego offset
    ego_id: str | None = None  # ego offset

    @classmethod
    def constant(cls, value: float) -> "ThresholdSpec":
        return cls(ThresholdKind.CONSTANT, value=float(value))

    @classmethod
    def aggregate_offset(cls, offset: float) -> "ThresholdSpec":
        return cls(ThresholdKind.AGGREGATE_OFFSET, offset=float(offset))

    @classmethod
    def ego_offset(cls, ego_id: str, offset: float) -> "ThresholdSpec":
        return cls(ThresholdKind.EGO_OFFSET, offset=float(offset), ego_id=ego_id)

    @property
    def is_variable(self) -> bool:
        return self.kind is not ThresholdKind.CONSTANT


@dataclass(frozen=True)
class TwoRange:
    threshold: ThresholdSpec

    @property
    def thresholds(self) -> tuple[ThresholdSpec, ...]:
        return (self.threshold,)


@dataclass(frozen=True)
class ThreeRange:
    lower: ThresholdSpec
    upper: ThresholdSpec

    @property
    def thresholds(self) -> tuple[ThresholdSpec, ...]:
        return (self.lower, self.upper)


@dataclass(frozen=True)
class QuerySpec:
    criterion: Criterion
    mode: TwoRange | ThreeRange

    def validate(self, dataset: Dataset) -> None:
        self.criterion.validate(dataset.num_timesteps)
        for spec in self.mode.thresholds:
            if spec.is_variable and self.criterion.kind is not CriterionKind.VALUE:
                raise InvalidQueryError(
                    "variable thresholds are only valid with the value criterion",
                    reason="invalid-threshold-combination",
                )


class RangeLabel(str, Enum):
    LOW = "low"
    MID = "mid"
    HIGH = "high"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class Segment:
    """Maximal run of one label; inclusive timestep range."""

    case_id: str
    start: int
    end: int
    label: RangeLabel


@dataclass(frozen=True)
class LabelMatrix:
    case_ids: tuple[str, ...]
    labels: tuple[tuple[RangeLabel, ...], ...]
    threshold_curves: tuple[OptSeries, ...]  # one (two-range) or two (three-range)

    def row(self, case_id: str) -> tuple[RangeLabel, ...]:
        return self.labels[self.case_ids.index(case_id)]


def resolve_threshold(dataset: Dataset, spec: ThresholdSpec) -> OptSeries:
    """Resolve a threshold spec into a per-timestep curve; missing propagates."""
    t_count = dataset.num_timesteps
    if spec.kind is ThresholdKind.CONSTANT:
        return (spec.value,) * t_count
    if spec.kind is ThresholdKind.AGGREGATE_OFFSET:
        base = compute_aggregate_series(dataset)
    else:
        base = ego_series(dataset, spec.ego_id)
    return tuple(None if b is None else b + spec.offset for b in base)


def rank_threshold_curve(dataset: Dataset, n: int) -> OptSeries:
    """Original-value-space curve for a top-n rank query.

    At each timestep this is the n-th largest present value, so that (with
    distinct values) a case is top-n iff its value >= curve(t). Missing when
    fewer than n values are present.
    """
    if n < 1:
        raise InvalidQueryError(f"rank count must be >= 1, got {n}", reason="invalid-rank-count")
    out = []
    for t in range(dataset.num_timesteps):
        present = sorted(
            (c.values[t] for c in dataset.cases if c.values[t] is not None), reverse=True
        )
        out.append(present[n - 1] if len(present) >= n else None)
    return tuple(out)


def _classify_cell(x, mode, curves, t) -> RangeLabel:
    if x is None:
        return RangeLabel.UNDEFINED
    if isinstance(mode, TwoRange):
        theta = curves[0][t]
        if theta is None:
            return RangeLabel.UNDEFINED
        return RangeLabel.LOW if x <= theta else RangeLabel.HIGH
    lower, upper = curves[0][t], curves[1][t]
    if lower is None or upper is None:
        return RangeLabel.UNDEFINED
    if x <= lower:
        return RangeLabel.LOW
    if x >= upper:
        return RangeLabel.HIGH
    return RangeLabel.MID


def classify(dataset: Dataset, query: QuerySpec) -> LabelMatrix:
    """Label every (case, timestep) cell and attach the resolved threshold curves."""
    query.validate(dataset)
    curves = tuple(resolve_threshold(dataset, s) for s in query.mode.thresholds)
    if isinstance(query.mode, ThreeRange):
        for t, (lo, hi) in enumerate(zip(curves[0], curves[1])):
            if lo is not None and hi is not None and lo > hi:
                raise CrossedThresholdError(t, lo, hi)
    matrix = derive(dataset, query.criterion)
    labels = tuple(
        tuple(_classify_cell(x, query.mode, curves, t) for t, x in enumerate(row))
        for row in matrix.values
    )
    return LabelMatrix(case_ids=dataset.case_ids, labels=labels, threshold_curves=curves)


def segment_labels(case_id: str, row) -> list[Segment]:
    """Run-length encode one label row into maximal segments covering [0, T-1]."""
    segments: list[Segment] = []
    start = 0
    for t in range(1, len(row) + 1):
        if t == len(row) or row[t] != row[start]:
            segments.append(Segment(case_id=case_id, start=start, end=t - 1, label=row[start]))
            start = t
    return segments


def segment_matrix(matrix: LabelMatrix) -> dict[str, list[Segment]]:
    return {
        cid: segment_labels(cid, row) for cid, row in zip(matrix.case_ids, matrix.labels)
    }
