"""Composition of the preprocessing steps into one document-level call."""

from __future__ import annotations

from ..errors import UnknownLanguageError
from .analyzers import Analyzer, annotate, lemmatize, tokenize
from .language import DEFAULT_FLOOR, LanguageProfiles, detect_language
from .topic import TopicModel, classify_topic
from .types import PreprocessedDocument, Topic


def preprocess(
    doc_id: str,
    text: str,
    analyzers: dict[str, Analyzer],
    topic_model: TopicModel,
    profiles: LanguageProfiles | None = None,
    language: str | None = None,
    detector_floor: float = DEFAULT_FLOOR,
) -> PreprocessedDocument:
    """Run language detection, topic detection, tokenization, lemmatization,
    and annotation over one document.

    When ``language`` is given (document metadata), the detector is bypassed
    entirely and profiles are not consulted.
    """
    if language is None:
        language = detect_language(text, profiles, floor=detector_floor)
    analyzer = analyzers.get(language)
    if analyzer is None:
        raise UnknownLanguageError(f"no analyzer registered for {language!r}")

    topic = classify_topic(text, topic_model)
    tokens = tokenize(text, language, analyzer)
    triples = annotate(lemmatize(tokens, language, analyzer), language, analyzer)
    return PreprocessedDocument(
        doc_id=doc_id,
        language=language,
        topic=Topic(topic),
        sentences=triples,
        char_length=len(text),
    )
