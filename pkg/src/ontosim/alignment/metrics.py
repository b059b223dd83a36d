"""Character-level detection quality: precision, recall, granularity, and the
combined quality score F1/log2(1+G).

Positions are (document, side, character offset) with the suspicious and the
source side of every case/detection both counted. Precision and recall are
micro-averaged over the union of covered positions; granularity averages, over
the detected cases, how many detections overlap each one (1 is ideal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .merge import Detection, Span

OBFUSCATION_LABELS = ("automatic", "manual", "none")

DEFAULT_LENGTH_BOUNDS = (300, 1000)


@dataclass(frozen=True)
class PlagiarismCase:
    """Ground-truth aligned passage pair, optionally labeled by obfuscation."""

    suspicious: Span
    source: Span
    obfuscation: str | None = None


@dataclass
class PlagdetMetrics:
    precision: float
    recall: float
    granularity: float
    plagdet: float

    @property
    def f1(self) -> float:
        if self.precision + self.recall == 0.0:
            return 0.0
        return 2 * self.precision * self.recall / (self.precision + self.recall)

    def as_dict(self) -> dict[str, float]:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "granularity": self.granularity,
            "plagdet": self.plagdet,
        }


@dataclass
class FacetBreakdown:
    per_facet: dict[str, PlagdetMetrics]
    unmatched_detections: int


def plagdet_score(precision: float, recall: float, granularity: float) -> float:
    if granularity < 1.0:
        raise ValueError("granularity must be >= 1")
    if precision + recall == 0.0:
        return 0.0
    f1 = 2 * precision * recall / (precision + recall)
    return f1 / math.log2(1.0 + granularity)


def _merge_intervals(intervals: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Collapse [start, end) intervals into a disjoint sorted list."""
    merged: list[tuple[int, int]] = []
    for start, end in sorted(intervals):
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return merged


def _covered(annotations: Iterable[tuple[Span, Span]]) -> dict[tuple[str, str], list[tuple[int, int]]]:
    """Merged intervals per (doc, side) key covering both sides of each pair."""
    raw: dict[tuple[str, str], list[tuple[int, int]]] = {}
    for suspicious, source in annotations:
        if suspicious.length > 0:
            raw.setdefault((suspicious.doc_id, "susp"), []).append(
                (suspicious.offset, suspicious.end)
            )
        if source.length > 0:
            raw.setdefault((source.doc_id, "src"), []).append(
                (source.offset, source.end)
            )
    return {key: _merge_intervals(vals) for key, vals in raw.items()}


def _total_length(cover: dict[tuple[str, str], list[tuple[int, int]]]) -> int:
    return sum(end - start for intervals in cover.values() for start, end in intervals)


def _intersection_length(
    a: dict[tuple[str, str], list[tuple[int, int]]],
    b: dict[tuple[str, str], list[tuple[int, int]]],
) -> int:
    total = 0
    for key, a_intervals in a.items():
        b_intervals = b.get(key)
        if not b_intervals:
            continue
        i = j = 0
        while i < len(a_intervals) and j < len(b_intervals):
            start = max(a_intervals[i][0], b_intervals[j][0])
            end = min(a_intervals[i][1], b_intervals[j][1])
            if start < end:
                total += end - start
            if a_intervals[i][1] < b_intervals[j][1]:
                i += 1
            else:
                j += 1
    return total


def _spans_overlap(a: Span, b: Span) -> bool:
    return a.doc_id == b.doc_id and a.offset < b.end and b.offset < a.end


def detection_overlaps_case(detection: Detection, case: PlagiarismCase) -> bool:
    """True when the two share at least one (doc, side, offset) position."""
    return _spans_overlap(detection.suspicious, case.suspicious) or _spans_overlap(
        detection.source, case.source
    )


def score_detections(
    detections: Sequence[Detection], cases: Sequence[PlagiarismCase]
) -> PlagdetMetrics:
    """Micro-averaged character metrics of the detections against the cases.

    Conventions: with no detected characters precision is 1; with no case
    characters recall is 0. Both together therefore yield a combined score
    of 0, never a division by zero.
    """
    det_cover = _covered((d.suspicious, d.source) for d in detections)
    case_cover = _covered((c.suspicious, c.source) for c in cases)
    det_total = _total_length(det_cover)
    case_total = _total_length(case_cover)
    hit = _intersection_length(det_cover, case_cover)

    precision = hit / det_total if det_total else 1.0
    recall = hit / case_total if case_total else 0.0

    per_case_counts = []
    for case in cases:
        count = sum(1 for det in detections if detection_overlaps_case(det, case))
        if count > 0:
            per_case_counts.append(count)
    granularity = (
        sum(per_case_counts) / len(per_case_counts) if per_case_counts else 1.0
    )
    return PlagdetMetrics(
        precision=precision,
        recall=recall,
        granularity=granularity,
        plagdet=plagdet_score(precision, recall, granularity),
    )


def length_class(
    case: PlagiarismCase, bounds: tuple[int, int] = DEFAULT_LENGTH_BOUNDS
) -> str:
    """short/medium/long by suspicious-side character length."""
    short_max, medium_max = bounds
    if case.suspicious.length < short_max:
        return "short"
    if case.suspicious.length <= medium_max:
        return "medium"
    return "long"


def breakdown_metrics(
    detections: Sequence[Detection],
    cases: Sequence[PlagiarismCase],
    facet: Literal["length", "obfuscation"],
    length_bounds: tuple[int, int] = DEFAULT_LENGTH_BOUNDS,
) -> FacetBreakdown:
    """Per-facet metrics over a partition of the cases.

    Each partition is scored against only the detections overlapping its
    cases; detections overlapping no case at all are reported once in the
    unmatched bucket instead of hurting precision in every partition.
    """
    if facet not in ("length", "obfuscation"):
        raise ValueError(f"unknown facet {facet!r}")
    partitions: dict[str, list[PlagiarismCase]] = {}
    for case in cases:
        if facet == "length":
            value = length_class(case, length_bounds)
        elif facet == "obfuscation":
            if case.obfuscation is None:
                raise ValueError(
                    f"case {case.suspicious.doc_id}@{case.suspicious.offset} "
                    "has no obfuscation label"
                )
            value = case.obfuscation
        else:
            raise ValueError(f"unknown facet {facet!r}")
        partitions.setdefault(value, []).append(case)

    per_facet: dict[str, PlagdetMetrics] = {}
    for value in sorted(partitions):
        facet_cases = partitions[value]
        facet_dets = [
            det
            for det in detections
            if any(detection_overlaps_case(det, case) for case in facet_cases)
        ]
        per_facet[value] = score_detections(facet_dets, facet_cases)

    unmatched = sum(
        1
        for det in detections
        if not any(detection_overlaps_case(det, case) for case in cases)
    )
    return FacetBreakdown(per_facet=per_facet, unmatched_detections=unmatched)
