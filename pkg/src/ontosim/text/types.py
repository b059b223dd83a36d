"""Core value types produced by the preprocessing pipeline."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Topic(str, enum.Enum):
    BIOLOGY = "biology"
    FICTION = "fiction"
    NEUTRAL = "neutral"


# Coarse POS tag set; analyzers must not emit anything outside it.
POS_TAGS = frozenset(
    {"NOUN", "VERB", "ADJ", "PRON", "ADP", "PUNCT", "SYM", "NUM", "OTHER"}
)

NE_NONE = "none"
NE_TAGS = frozenset({NE_NONE, "human", "location", "organization"})


@dataclass(frozen=True)
class RawToken:
    """A surface token with its span in the original text."""

    text: str
    offset: int
    length: int


@dataclass(frozen=True)
class LemmaTriple:
    """(lemma, POS, NE) unit; spans index into the original document text."""

    lemma: str
    pos: str
    ne: str
    offset: int
    length: int
    sentence_index: int
    surface: str = ""

    def end(self) -> int:
        return self.offset + self.length


@dataclass
class PreprocessedDocument:
    doc_id: str
    language: str
    topic: Topic
    sentences: list[list[LemmaTriple]] = field(default_factory=list)
    char_length: int = 0

    def sentence_char_span(self, index: int) -> tuple[int, int]:
        """(offset, length) hull of one sentence's token spans."""
        triples = self.sentences[index]
        start = triples[0].offset
        return start, triples[-1].end() - start

    def triple_count(self) -> int:
        return sum(len(s) for s in self.sentences)
