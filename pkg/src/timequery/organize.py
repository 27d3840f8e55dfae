"""Turns label matrices into displayable, ordered results.

Pipeline: assign colors per range -> demote length-filtered segments to
context -> compute colored lengths (the sort keys) -> order cases, optionally
grouped by category.

Lengths are counted in timesteps (inclusive index count). Filtered segments
are demoted to gray context rather than deleted, so every timeline still
spans the full axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import LabelMatrix, RangeLabel, segment_matrix
from .errors import InvalidQueryError
from .model import Dataset

CONTEXT = "context"  # gray, not a query result
HIDDEN = "hidden"  # range hidden via the eye button

_RESERVED = {CONTEXT, HIDDEN}


@dataclass(frozen=True)
class ColorAssignment:
    """Maps each range label to a color token, context, or hidden.

    Unmapped labels default to context; Undefined is always context.
    """

    mapping: dict[RangeLabel, str]

    def __post_init__(self):
        cleaned = dict(self.mapping)
        cleaned[RangeLabel.UNDEFINED] = CONTEXT
        object.__setattr__(self, "mapping", cleaned)
        if not self.color_tokens:
            raise InvalidQueryError(
                "at least one range must be assigned a color", reason="no-color-assigned"
            )

    def resolve(self, label: RangeLabel) -> str:
        return self.mapping.get(label, CONTEXT)

    @property
    def color_tokens(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for token in self.mapping.values():
            if token not in _RESERVED:
                seen.setdefault(token, None)
        return tuple(seen)


@dataclass(frozen=True)
class SegmentFilter:
    min_len: int | None = None
    max_len: int | None = None

    def __post_init__(self):
        for v in (self.min_len, self.max_len):
            if v is not None and v < 1:
                raise InvalidQueryError("segment filter lengths must be >= 1", reason="invalid-filter")
        if self.min_len is not None and self.max_len is not None and self.min_len > self.max_len:
            raise InvalidQueryError("min_len must be <= max_len", reason="invalid-filter")

    def keeps(self, length: int) -> bool:
        if self.min_len is not None and length < self.min_len:
            return False
        if self.max_len is not None and length > self.max_len:
            return False
        return True


@dataclass(frozen=True)
class SortSpec:
    color: str
    window: tuple[int, int] | None = None  # inclusive timestep range
    group_mode: bool = False
    hide_uncolored: bool = False


@dataclass(frozen=True)
class DisplaySegment:
    start: int
    end: int
    color: str  # color token or "context"

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass
class OrganizedResult:
    """Visible cases in display order, optionally grouped, ready to render."""

    groups: list[tuple[str | None, list[str]]]
    segments: dict[str, list[DisplaySegment]]
    colored_lengths: dict[str, dict[str, int]]
    threshold_curves: tuple = ()
    color_tokens: tuple[str, ...] = ()

    @property
    def visible_case_ids(self) -> list[str]:
        return [cid for _, members in self.groups for cid in members]


def _merge(segments: list[DisplaySegment]) -> list[DisplaySegment]:
    merged: list[DisplaySegment] = []
    for seg in segments:
        if merged and merged[-1].color == seg.color and merged[-1].end + 1 == seg.start:
            merged[-1] = DisplaySegment(merged[-1].start, seg.end, seg.color)
        else:
            merged.append(seg)
    return merged


def apply_colors_and_filter(
    labels: LabelMatrix,
    colors: ColorAssignment,
    seg_filter: SegmentFilter | None = None,
) -> dict[str, list[DisplaySegment]]:
    """Map label segments through the color assignment and the length filter.

    Hidden ranges render as context here; hiding whole cases happens in
    sort_cases via hide_uncolored.
    """
    seg_filter = seg_filter or SegmentFilter()
    out: dict[str, list[DisplaySegment]] = {}
    for case_id, segs in segment_matrix(labels).items():
        display = []
        for seg in segs:
            token = colors.resolve(seg.label)
            if token == HIDDEN:
                token = CONTEXT
            elif token != CONTEXT and not seg_filter.keeps(seg.end - seg.start + 1):
                token = CONTEXT
            display.append(DisplaySegment(seg.start, seg.end, token))
        out[case_id] = _merge(display)
    return out


def colored_length(
    segments: list[DisplaySegment],
    color: str,
    window: tuple[int, int] | None = None,
) -> int:
    """Total timesteps covered by segments of the given color, clipped to the window."""
    total = 0
    for seg in segments:
        if seg.color != color:
            continue
        if window is None:
            total += seg.length
        else:
            lo, hi = max(seg.start, window[0]), min(seg.end, window[1])
            if lo <= hi:
                total += hi - lo + 1
    return total


def sort_cases(
    dataset: Dataset,
    display: dict[str, list[DisplaySegment]],
    colors: ColorAssignment,
    sort: SortSpec,
) -> OrganizedResult:
    """Order cases by colored length (descending, id tie-break), optionally grouped.

    Categories are ordered by mean key over visible member cases, descending,
    with category-name tie-break. hide_uncolored drops cases with zero length
    for every assigned color token before grouping.
    """
    tokens = colors.color_tokens
    if sort.color not in tokens:
        raise InvalidQueryError(
            f"sort color {sort.color!r} is not an assigned color token",
            reason="unassigned-sort-color",
        )
    if sort.window is not None:
        w0, w1 = sort.window
        if not (0 <= w0 <= w1 <= dataset.num_timesteps - 1):
            raise InvalidQueryError(
                f"sort window {sort.window} out of range", reason="invalid-window-range"
            )

    visible = list(dataset.case_ids)
    if sort.hide_uncolored:
        visible = [
            cid
            for cid in visible
            if any(colored_length(display[cid], tok) > 0 for tok in tokens)
        ]

    keys = {cid: colored_length(display[cid], sort.color, sort.window) for cid in visible}
    lengths = {
        cid: {tok: colored_length(display[cid], tok, sort.window) for tok in tokens}
        for cid in visible
    }

    if not sort.group_mode:
        order = sorted(visible, key=lambda cid: (-keys[cid], cid))
        groups: list[tuple[str | None, list[str]]] = [(None, order)]
    else:
        by_cat: dict[str, list[str]] = {}
        for cid in visible:
            by_cat.setdefault(dataset.case(cid).category or "(none)", []).append(cid)
        means = {cat: sum(keys[c] for c in members) / len(members) for cat, members in by_cat.items()}
        cats = sorted(by_cat, key=lambda cat: (-means[cat], cat))
        groups = [
            (cat, sorted(by_cat[cat], key=lambda cid: (-keys[cid], cid))) for cat in cats
        ]

    return OrganizedResult(
        groups=groups,
        segments={cid: display[cid] for cid in (c for _, m in groups for c in m)},
        colored_lengths=lengths,
        color_tokens=tokens,
    )


def organize_unsorted(
    dataset: Dataset,
    display: dict[str, list[DisplaySegment]],
    colors: ColorAssignment,
) -> OrganizedResult:
    """Dataset-order result when no sort spec is given (batch/API convenience)."""
    tokens = colors.color_tokens
    order = list(dataset.case_ids)
    return OrganizedResult(
        groups=[(None, order)],
        segments={cid: display[cid] for cid in order},
        colored_lengths={
            cid: {tok: colored_length(display[cid], tok) for tok in tokens} for cid in order
        },
        color_tokens=tokens,
    )
