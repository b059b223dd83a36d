"""Exhaustive grid search over merge/classification thresholds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .fragments import FragmentPair
from .merge import merge_and_classify
from .metrics import PlagiarismCase, score_detections

DEFAULT_CHAR_GRID = (600, 1200, 2400)
DEFAULT_SCORE_GRID = (0.30, 0.45, 0.60, 0.75)


@dataclass
class GridPoint:
    char_distance_threshold: int
    score_threshold: float
    metrics_plagdet: float
    detections: int


@dataclass
class TuningResult:
    best_char_distance: int
    best_score_threshold: float
    best_plagdet: float
    table: list[GridPoint]


def tune_thresholds(
    pairs: list[FragmentPair],
    cases: Sequence[PlagiarismCase],
    char_grid: Sequence[int] = DEFAULT_CHAR_GRID,
    score_grid: Sequence[float] = DEFAULT_SCORE_GRID,
    merge_rule: Literal["both", "either"] = "both",
) -> TuningResult:
    """Evaluate every grid point and pick the one with the highest combined
    score; ties go to the smaller score threshold, then the smaller char
    distance threshold."""
    if not char_grid or not score_grid:
        raise ValueError("tuning grid must be non-empty on both axes")
    if not cases:
        raise ValueError("tuning requires labeled ground-truth cases")

    table: list[GridPoint] = []
    best: GridPoint | None = None
    for char_threshold in sorted(set(char_grid)):
        for score_threshold in sorted(set(score_grid)):
            detections = merge_and_classify(
                pairs, char_threshold, score_threshold, merge_rule=merge_rule
            )
            metrics = score_detections(detections, cases)
            point = GridPoint(
                char_distance_threshold=char_threshold,
                score_threshold=score_threshold,
                metrics_plagdet=metrics.plagdet,
                detections=len(detections),
            )
            table.append(point)
            if best is None or point.metrics_plagdet > best.metrics_plagdet or (
                point.metrics_plagdet == best.metrics_plagdet
                and (point.score_threshold, point.char_distance_threshold)
                < (best.score_threshold, best.char_distance_threshold)
            ):
                best = point
    assert best is not None
    return TuningResult(
        best_char_distance=best.char_distance_threshold,
        best_score_threshold=best.score_threshold,
        best_plagdet=best.metrics_plagdet,
        table=table,
    )
