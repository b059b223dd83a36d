from .analyzers import (
    Analyzer,
    AnalyzerData,
    SegmentationAnalyzer,
    WhitespaceAnalyzer,
    annotate,
    build_analyzer,
    langid_samples,
    lemmatize,
    load_analyzers,
    tokenize,
)
from .language import LanguageProfiles, detect_language, train_profiles
from .pipeline import preprocess
from .topic import TopicModel, classify_topic, topic_log_posteriors, train_topic_model
from .types import (
    NE_NONE,
    NE_TAGS,
    POS_TAGS,
    LemmaTriple,
    PreprocessedDocument,
    RawToken,
    Topic,
)

__all__ = [
    "Analyzer",
    "AnalyzerData",
    "LanguageProfiles",
    "LemmaTriple",
    "NE_NONE",
    "NE_TAGS",
    "POS_TAGS",
    "PreprocessedDocument",
    "RawToken",
    "SegmentationAnalyzer",
    "Topic",
    "TopicModel",
    "WhitespaceAnalyzer",
    "annotate",
    "build_analyzer",
    "classify_topic",
    "detect_language",
    "langid_samples",
    "lemmatize",
    "load_analyzers",
    "preprocess",
    "tokenize",
    "topic_log_posteriors",
    "train_profiles",
    "train_topic_model",
]
