"""Exception hierarchy shared across the package."""


class TimeQueryError(Exception):
    """Base class for all errors raised by this package."""


class DatasetError(TimeQueryError):
    """Malformed dataset (construction-time validation failure)."""


class UnknownCaseError(TimeQueryError, KeyError):
    def __init__(self, case_id: str):
        super().__init__(f"unknown case id: {case_id!r}")
        self.case_id = case_id


class UnknownLabelError(TimeQueryError, KeyError):
    def __init__(self, label: str):
        super().__init__(f"unknown time label: {label!r}")
        self.label = label


class ParseError(TimeQueryError):
    """CSV ingestion failure. Carries 1-based data row and column name when known."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        loc = ""
        if row is not None:
            loc = f" (row {row}" + (f", column {column!r})" if column is not None else ")")
        super().__init__(message + loc)
        self.row = row
        self.column = column


class InvalidQueryError(TimeQueryError):
    """Query parameters violate a precondition (bad delta/window, bad combination...)."""

    def __init__(self, message: str, reason: str = "invalid-query"):
        super().__init__(message)
        self.reason = reason


class CrossedThresholdError(InvalidQueryError):
    """Three-range lower threshold exceeds the upper one somewhere."""

    def __init__(self, timestep: int, lower: float, upper: float):
        super().__init__(
            f"lower threshold {lower} exceeds upper threshold {upper} at timestep {timestep}",
            reason="crossed-thresholds",
        )
        self.timestep = timestep
