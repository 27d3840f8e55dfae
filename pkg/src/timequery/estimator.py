"""Scikit-learn style facade over the query pipeline.

RangeQuery is a transformer: X is a Dataset, the transform output is an
OrganizedResult. Parameters mirror the wire-level query request so the same
configuration can drive the estimator, the CLI, and the HTTP API.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .derived import Criterion, CriterionKind
from .engine import QuerySpec, RangeLabel, ThreeRange, ThresholdSpec, TwoRange
from .errors import InvalidQueryError
from .model import Dataset
from .organize import ColorAssignment, OrganizedResult, SegmentFilter, SortSpec
from .pipeline import QueryRequest, run_query


def check_dataset(X) -> Dataset:
    """Validate the transform input; only Dataset instances are accepted."""
    if not isinstance(X, Dataset):
        raise TypeError(f"expected a Dataset, got {type(X).__name__}")
    return X


def _as_threshold(value) -> ThresholdSpec:
    if isinstance(value, ThresholdSpec):
        return value
    if isinstance(value, (int, float)):
        return ThresholdSpec.constant(value)
    raise InvalidQueryError(f"cannot interpret {value!r} as a threshold")


class RangeQuery(TransformerMixin, BaseEstimator):
    """Classify every (case, timestep) cell against one or two thresholds.

    Parameters
    ----------
    criterion : str
        One of "value", "rank", "net_change", "pct_change", "variance".
    threshold : number or ThresholdSpec, optional
        Two-range mode threshold. Mutually exclusive with lower/upper.
    lower, upper : number or ThresholdSpec, optional
        Three-range mode thresholds.
    delta : int, optional
        Lookback for net/pct change criteria.
    window : int, optional
        Odd window length for the variance criterion.
    colors : dict, optional
        Range-name -> color token / "context" / "hidden". Defaults to
        coloring the low range green.
    min_len, max_len : int, optional
        Segment length filter bounds.
    sort_color : str, optional
        Color token to sort by; dataset order when omitted.
    sort_window : (int, int), optional
        Inclusive timestep range restricting the sort key.
    group_mode : bool
        Group cases by category, categories ordered by mean sort key.
    hide_uncolored : bool
        Drop cases with zero colored length for every token.
    """

    def __init__(
        self,
        criterion="value",
        threshold=None,
        lower=None,
        upper=None,
        delta=None,
        window=None,
        colors=None,
        min_len=None,
        max_len=None,
        sort_color=None,
        sort_window=None,
        group_mode=False,
        hide_uncolored=False,
    ):
        self.criterion = criterion
        self.threshold = threshold
        self.lower = lower
        self.upper = upper
        self.delta = delta
        self.window = window
        self.colors = colors
        self.min_len = min_len
        self.max_len = max_len
        self.sort_color = sort_color
        self.sort_window = sort_window
        self.group_mode = group_mode
        self.hide_uncolored = hide_uncolored

    def _build_request(self) -> QueryRequest:
        criterion = Criterion(
            kind=CriterionKind(self.criterion), delta=self.delta, window=self.window
        )
        if self.threshold is not None:
            if self.lower is not None or self.upper is not None:
                raise InvalidQueryError("threshold and lower/upper are mutually exclusive")
            mode = TwoRange(_as_threshold(self.threshold))
        elif self.lower is not None and self.upper is not None:
            mode = ThreeRange(_as_threshold(self.lower), _as_threshold(self.upper))
        else:
            raise InvalidQueryError("set threshold (two-range) or lower and upper (three-range)")

        colors = self.colors or {"low": "green"}
        assignment = ColorAssignment({RangeLabel(k): v for k, v in colors.items()})
        sort = None
        if self.sort_color is not None:
            sort = SortSpec(
                color=self.sort_color,
                window=tuple(self.sort_window) if self.sort_window else None,
                group_mode=self.group_mode,
                hide_uncolored=self.hide_uncolored,
            )
        return QueryRequest(
            query=QuerySpec(criterion, mode),
            colors=assignment,
            seg_filter=SegmentFilter(min_len=self.min_len, max_len=self.max_len),
            sort=sort,
        )

    def fit(self, X, y=None):
        dataset = check_dataset(X)
        request = self._build_request()
        request.query.validate(dataset)
        self.request_ = request
        self.n_timesteps_ = dataset.num_timesteps
        return self

    def transform(self, X) -> OrganizedResult:
        dataset = check_dataset(X)
        if not hasattr(self, "request_"):
            self.fit(dataset)
        return run_query(dataset, self.request_)
