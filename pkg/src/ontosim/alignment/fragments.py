"""Sliding-window fragmentation and cross-collection fragment matching."""

from __future__ import annotations

from dataclasses import dataclass

from ..kg.store import KnowledgeGraphStore
from ..linking import LinkerConfig, link
from ..text.types import PreprocessedDocument
from ..vectors import DEFAULT_MAX_DEPTH, EntityVector, build_vector, cosine

DEFAULT_WINDOW = 6
DEFAULT_STEP = 3
DEFAULT_TOP_K = 5


@dataclass(frozen=True)
class Fragment:
    """A contiguous sentence window of one document."""

    doc_id: str
    first_sentence: int
    sentence_count: int
    char_offset: int
    char_length: int
    vector: EntityVector
    language: str = ""

    @property
    def fragment_id(self) -> str:
        return f"{self.doc_id}#{self.first_sentence}"

    @property
    def char_end(self) -> int:
        return self.char_offset + self.char_length


@dataclass(frozen=True)
class FragmentPair:
    suspicious: Fragment
    source: Fragment
    score: float


def fragment_document(
    doc: PreprocessedDocument,
    store: KnowledgeGraphStore,
    linker_config: LinkerConfig,
    window: int = DEFAULT_WINDOW,
    step: int = DEFAULT_STEP,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> list[Fragment]:
    """Split a document into overlapping sentence windows with entity vectors.

    Windows start at sentence 0, step, 2*step, ...; a trailing window shorter
    than ``window`` is emitted only when it contributes a sentence not covered
    by the previously emitted fragment.
    """
    if step < 1 or window < step:
        raise ValueError("require window >= step >= 1")
    total = len(doc.sentences)
    fragments: list[Fragment] = []
    covered_end = -1
    for start in range(0, total, step):
        count = min(window, total - start)
        last = start + count - 1
        if last <= covered_end:
            continue
        covered_end = last
        sub = PreprocessedDocument(
            doc_id=doc.doc_id,
            language=doc.language,
            topic=doc.topic,
            sentences=doc.sentences[start : start + count],
            char_length=doc.char_length,
        )
        bag = link(sub, store, linker_config)
        first_offset, _ = doc.sentence_char_span(start)
        last_offset, last_length = doc.sentence_char_span(last)
        char_length = (last_offset + last_length) - first_offset
        fragments.append(
            Fragment(
                doc_id=doc.doc_id,
                first_sentence=start,
                sentence_count=count,
                char_offset=first_offset,
                char_length=char_length,
                vector=build_vector(
                    bag, store, max_depth=max_depth, doc_id=f"{doc.doc_id}#{start}"
                ),
                language=doc.language,
            )
        )
    return fragments


def retrieve_fragment_matches(
    query: Fragment,
    source_fragments: list[Fragment],
    k: int = DEFAULT_TOP_K,
) -> list[FragmentPair]:
    """Top-k source fragments by cosine.

    Zero-score pairs are excluded; fragments of the same document are never
    paired, nor are same-language fragments when both carry language
    metadata (the task is cross-language alignment).
    """
    scored = []
    for source in source_fragments:
        if source.doc_id == query.doc_id:
            continue
        if query.language and source.language and query.language == source.language:
            continue
        score = cosine(query.vector, source.vector)
        if score > 0.0:
            scored.append((score, source))
    scored.sort(key=lambda item: (-item[0], item[1].doc_id, item[1].first_sentence))
    return [
        FragmentPair(suspicious=query, source=source, score=score)
        for score, source in scored[:k]
    ]
