from .fragments import (
    DEFAULT_STEP,
    DEFAULT_TOP_K,
    DEFAULT_WINDOW,
    Fragment,
    FragmentPair,
    fragment_document,
    retrieve_fragment_matches,
)
from .io import (
    read_cases,
    read_cases_tsv,
    read_cases_xml,
    read_detections_tsv,
    read_detections_xml,
    write_detections_tsv,
    write_detections_xml,
)
from .merge import Detection, Span, char_gap, merge_and_classify
from .metrics import (
    DEFAULT_LENGTH_BOUNDS,
    FacetBreakdown,
    PlagdetMetrics,
    PlagiarismCase,
    breakdown_metrics,
    detection_overlaps_case,
    length_class,
    plagdet_score,
    score_detections,
)
from .tuning import DEFAULT_CHAR_GRID, DEFAULT_SCORE_GRID, TuningResult, tune_thresholds

__all__ = [
    "DEFAULT_CHAR_GRID",
    "DEFAULT_LENGTH_BOUNDS",
    "DEFAULT_SCORE_GRID",
    "DEFAULT_STEP",
    "DEFAULT_TOP_K",
    "DEFAULT_WINDOW",
    "Detection",
    "FacetBreakdown",
    "Fragment",
    "FragmentPair",
    "PlagdetMetrics",
    "PlagiarismCase",
    "Span",
    "TuningResult",
    "breakdown_metrics",
    "char_gap",
    "detection_overlaps_case",
    "fragment_document",
    "length_class",
    "merge_and_classify",
    "plagdet_score",
    "read_cases",
    "read_cases_tsv",
    "read_cases_xml",
    "read_detections_tsv",
    "read_detections_xml",
    "retrieve_fragment_matches",
    "score_detections",
    "tune_thresholds",
    "write_detections_tsv",
    "write_detections_xml",
]
