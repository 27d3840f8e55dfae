"""timequery: which-and-when range queries over collections of univariate time series."""

from .derived import (
    Criterion,
    CriterionKind,
    DerivedMatrix,
    compute_aggregate_series,
    compute_net_change,
    compute_pct_change,
    compute_rank_matrix,
    compute_windowed_variance,
    derive,
    ego_series,
)
from .engine import (
    LabelMatrix,
    QuerySpec,
    RangeLabel,
    Segment,
    ThreeRange,
    ThresholdSpec,
    TwoRange,
    classify,
    rank_threshold_curve,
    resolve_threshold,
    segment_labels,
)
from .errors import (
    CrossedThresholdError,
    DatasetError,
    InvalidQueryError,
    ParseError,
    TimeQueryError,
    UnknownCaseError,
    UnknownLabelError,
)
from .estimator import RangeQuery, check_dataset
from .ingest import IngestReport, load_dataset_file, parse_wide_csv, serialize_wide_csv
from .model import DataCase, Dataset, TimeAxis, time_index_of, value_at
from .organize import (
    ColorAssignment,
    DisplaySegment,
    OrganizedResult,
    SegmentFilter,
    SortSpec,
    apply_colors_and_filter,
    colored_length,
    sort_cases,
)
from .pipeline import QueryRequest, canonical_json, encode_response, parse_request, run_query

__version__ = "0.1.0"

__all__ = [
    "Criterion",
    "CriterionKind",
    "DerivedMatrix",
    "compute_aggregate_series",
    "compute_net_change",
    "compute_pct_change",
    "compute_rank_matrix",
    "compute_windowed_variance",
    "derive",
    "ego_series",
    "LabelMatrix",
    "QuerySpec",
    "RangeLabel",
    "Segment",
    "ThreeRange",
    "ThresholdSpec",
    "TwoRange",
    "classify",
    "rank_threshold_curve",
    "resolve_threshold",
    "segment_labels",
    "CrossedThresholdError",
    "DatasetError",
    "InvalidQueryError",
    "ParseError",
    "TimeQueryError",
    "UnknownCaseError",
    "UnknownLabelError",
    "RangeQuery",
    "check_dataset",
    "IngestReport",
    "load_dataset_file",
    "parse_wide_csv",
    "serialize_wide_csv",
    "DataCase",
    "Dataset",
    "TimeAxis",
    "time_index_of",
    "value_at",
    "ColorAssignment",
    "DisplaySegment",
    "OrganizedResult",
    "SegmentFilter",
    "SortSpec",
    "apply_colors_and_filter",
    "colored_length",
    "sort_cases",
    "QueryRequest",
    "canonical_json",
    "encode_response",
    "parse_request",
    "run_query",
]
