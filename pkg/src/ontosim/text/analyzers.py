"""Per-language text analyzers backed by plain data files.

An analyzer provides sentence splitting, tokenization, lemma lookup, POS
lookup, and a named-entity gazetteer for one language. Two families exist:

* whitespace languages (en, es, de, fr, ...): split on Unicode whitespace,
  strip punctuation, lemmatize via a surface-to-lemma lexicon;
* segmentation languages (ja, zh): longest-match dictionary segmentation,
  lemma equals the segmented token (the dictionary already carries base
  forms, so no separate lemmatization step is needed or applied).

No stemming is ever applied. All lexicons are UTF-8 TSV files, so real
tagger/segmenter output can be dropped in without code changes; the shipped
baselines keep the package self-contained.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from ..errors import ConfigError, UnknownLanguageError
from .types import NE_NONE, NE_TAGS, POS_TAGS, LemmaTriple, RawToken

SENTENCE_TERMINATORS = ".!?。"
CJK_TERMINATORS = "。！？．.!?"

# Words that end with a period without ending a sentence.
DEFAULT_ABBREVIATIONS = frozenset(
    {
        "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st",
        "etc", "vs", "e.g", "i.e", "cf", "fig", "no", "vol", "al",
        "a.m", "p.m",
    }
)

_NUMERIC_RE = re.compile(r"^\d+([.,]\d+)*$")
_TOKEN_RE = re.compile(r"\S+")


def _is_punctuation_char(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _trim_punctuation(token: str, offset: int) -> tuple[str, int]:
    """Strip leading/trailing punctuation, keeping interior marks."""
    start, end = 0, len(token)
    while start < end and _is_punctuation_char(token[start]):
        start += 1
    while end > start and _is_punctuation_char(token[end - 1]):
        end -= 1
    return token[start:end], offset + start


def _is_capitalized(token: str) -> bool:
    """First character is uppercase or caseless (CJK, digits)."""
    if not token:
        return False
    first = token[0]
    return not (first.isalpha() and first.islower())


def is_han_character(ch: str) -> bool:
    try:
        return unicodedata.name(ch).startswith("CJK UNIFIED IDEOGRAPH")
    except ValueError:
        return False


@dataclass
class AnalyzerData:
    """Lexicons for one language, loaded from a per-language directory."""

    language: str
    lemmas: dict[str, str] = field(default_factory=dict)
    pos_tags: dict[str, str] = field(default_factory=dict)
    gazetteer: dict[tuple[str, ...], str] = field(default_factory=dict)
    verb_nouns: dict[str, str] = field(default_factory=dict)
    stopwords: frozenset = frozenset()
    segmentation: frozenset = frozenset()
    abbreviations: frozenset = DEFAULT_ABBREVIATIONS
    langid_sample: str = ""


def _read_lines(node) -> list[str]:
    text = node.read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _read_tsv(node, path_label: str) -> list[tuple[str, str]]:
    pairs = []
    for line in _read_lines(node):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigError(f"{path_label}: expected 2 tab-separated fields: {line!r}")
        pairs.append((parts[0].strip(), parts[1].strip()))
    return pairs


def load_analyzer_data(language: str, lang_dir) -> AnalyzerData:
    """Read the lexicon files under one language directory; absent files mean
    empty lexicons."""
    data = AnalyzerData(language=language)

    def node(name: str):
        child = lang_dir.joinpath(name)
        return child if child.is_file() else None

    if (n := node("lemmas.tsv")) is not None:
        data.lemmas = {
            surface.casefold(): lemma.casefold()
            for surface, lemma in _read_tsv(n, f"{language}/lemmas.tsv")
        }
    if (n := node("pos.tsv")) is not None:
        tags = {}
        for lemma, tag in _read_tsv(n, f"{language}/pos.tsv"):
            if tag not in POS_TAGS:
                raise ConfigError(f"{language}/pos.tsv: unknown POS tag {tag!r}")
            tags[lemma.casefold()] = tag
        data.pos_tags = tags
    if (n := node("gazetteer.tsv")) is not None:
        gaz = {}
        for entry, ne in _read_tsv(n, f"{language}/gazetteer.tsv"):
            if ne not in NE_TAGS or ne == NE_NONE:
                raise ConfigError(f"{language}/gazetteer.tsv: unknown NE type {ne!r}")
            gaz[tuple(entry.casefold().split())] = ne
        data.gazetteer = gaz
    if (n := node("verb_nouns.tsv")) is not None:
        data.verb_nouns = {
            verb.casefold(): noun.casefold()
            for verb, noun in _read_tsv(n, f"{language}/verb_nouns.tsv")
        }
    if (n := node("stopwords.txt")) is not None:
        data.stopwords = frozenset(w.casefold() for w in _read_lines(n))
    if (n := node("segmentation.txt")) is not None:
        data.segmentation = frozenset(_read_lines(n))
    if (n := node("abbreviations.txt")) is not None:
        data.abbreviations = frozenset(w.casefold() for w in _read_lines(n))
    if (n := node("langid.txt")) is not None:
        data.langid_sample = n.read_text(encoding="utf-8")
    return data


class Analyzer:
    """Language-specific tokenize/lemma/POS/NE provider."""

    def __init__(self, data: AnalyzerData):
        self.data = data
        self.language = data.language

    # surface form used when joining lemma n-grams for index lookup
    joiner = " "
    segmenting = False

    def split_sentences(self, text: str) -> list[tuple[int, str]]:
        raise NotImplementedError

    def tokenize(self, text: str) -> list[list[RawToken]]:
        raise NotImplementedError

    def lemma_for(self, token_text: str) -> str:
        raise NotImplementedError

    def pos_for(self, lemma: str) -> str:
        tag = self.data.pos_tags.get(lemma)
        if tag is not None:
            return tag
        if _NUMERIC_RE.match(lemma):
            return "NUM"
        return "OTHER"


class WhitespaceAnalyzer(Analyzer):
    """Analyzer for languages with whitespace-separated words."""

    def split_sentences(self, text: str) -> list[tuple[int, str]]:
        sentences: list[tuple[int, str]] = []
        start = 0
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch in SENTENCE_TERMINATORS and (i + 1 >= n or text[i + 1].isspace()):
                if ch == "." and self._looks_like_abbreviation(text, i):
                    i += 1
                    continue
                chunk = text[start : i + 1]
                if chunk.strip():
                    sentences.append((start, chunk))
                start = i + 1
            i += 1
        tail = text[start:]
        if tail.strip():
            sentences.append((start, tail))
        return sentences

    def _looks_like_abbreviation(self, text: str, dot_index: int) -> bool:
        j = dot_index
        while j > 0 and not text[j - 1].isspace():
            j -= 1
        word = text[j:dot_index].strip(".,;:()[]\"'")
        if not word:
            return False
        if len(word) == 1 and word.isalpha():
            return True  # initials such as "J."
        return word.casefold() in self.data.abbreviations

    def tokenize(self, text: str) -> list[list[RawToken]]:
        result: list[list[RawToken]] = []
        for sent_offset, sentence in self.split_sentences(text):
            tokens: list[RawToken] = []
            for match in _TOKEN_RE.finditer(sentence):
                trimmed, offset = _trim_punctuation(
                    match.group(), sent_offset + match.start()
                )
                if trimmed:
                    tokens.append(RawToken(trimmed, offset, len(trimmed)))
            if tokens:
                result.append(tokens)
        return result

    def lemma_for(self, token_text: str) -> str:
        folded = token_text.casefold()
        base = self.data.lemmas.get(folded, folded)
        if self.data.pos_tags.get(base) == "VERB":
            return self.data.verb_nouns.get(base, base)
        return base


class SegmentationAnalyzer(Analyzer):
    """Analyzer for languages without word delimiters (ja, zh).

    Longest-match dictionary segmentation; characters not covered by the
    dictionary become single-character tokens. The segmentation step already
    removes inflection, so lemmas equal the segmented tokens.
    """

    joiner = ""
    segmenting = True

    def __init__(self, data: AnalyzerData):
        super().__init__(data)
        self._max_word = max((len(w) for w in data.segmentation), default=1)

    def split_sentences(self, text: str) -> list[tuple[int, str]]:
        sentences: list[tuple[int, str]] = []
        start = 0
        for i, ch in enumerate(text):
            if ch in CJK_TERMINATORS:
                chunk = text[start : i + 1]
                if chunk.strip():
                    sentences.append((start, chunk))
                start = i + 1
        tail = text[start:]
        if tail.strip():
            sentences.append((start, tail))
        return sentences

    def tokenize(self, text: str) -> list[list[RawToken]]:
        words = self.data.segmentation
        result: list[list[RawToken]] = []
        for sent_offset, sentence in self.split_sentences(text):
            tokens: list[RawToken] = []
            i = 0
            n = len(sentence)
            while i < n:
                ch = sentence[i]
                if ch.isspace() or _is_punctuation_char(ch) or ch in CJK_TERMINATORS:
                    i += 1
                    continue
                match_len = 1
                for length in range(min(self._max_word, n - i), 1, -1):
                    if sentence[i : i + length] in words:
                        match_len = length
                        break
                tokens.append(
                    RawToken(sentence[i : i + match_len], sent_offset + i, match_len)
                )
                i += match_len
            if tokens:
                result.append(tokens)
        return result

    def lemma_for(self, token_text: str) -> str:
        return token_text


def build_analyzer(data: AnalyzerData) -> Analyzer:
    if data.segmentation:
        return SegmentationAnalyzer(data)
    return WhitespaceAnalyzer(data)


def packaged_data_root():
    return resources.files("ontosim").joinpath("data")


def load_analyzers(
    languages: Iterable[str], analyzer_root: str | Path | None = None
) -> dict[str, Analyzer]:
    """Load one analyzer per language from a data directory tree.

    analyzer_root defaults to the lexicons shipped inside the package; a
    custom root must mirror the same layout (one directory per language).
    """
    if analyzer_root is not None:
        root = Path(analyzer_root)
    else:
        root = packaged_data_root().joinpath("analyzers")
    analyzers: dict[str, Analyzer] = {}
    for lang in sorted(set(languages)):
        lang_dir = root.joinpath(lang)
        if not lang_dir.is_dir():
            raise UnknownLanguageError(f"no analyzer data directory for {lang!r}")
        analyzers[lang] = build_analyzer(load_analyzer_data(lang, lang_dir))
    return analyzers


def langid_samples(analyzers: dict[str, Analyzer]) -> dict[str, str]:
    """Per-language seed text for training the language detector."""
    samples = {}
    for lang, analyzer in analyzers.items():
        if analyzer.data.langid_sample.strip():
            samples[lang] = analyzer.data.langid_sample
    return samples


# ---------------------------------------------------------------------------
# pipeline stages operating on analyzer output
# ---------------------------------------------------------------------------


def tokenize(text: str, language: str, analyzer: Analyzer) -> list[list[RawToken]]:
    if analyzer is None:
        raise UnknownLanguageError(f"no analyzer registered for {language!r}")
    return analyzer.tokenize(text)


def lemmatize(
    sentences: list[list[RawToken]], language: str, analyzer: Analyzer
) -> list[list[LemmaTriple]]:
    """Map tokens to base-form lemmas; verbs additionally map to their
    nominalization when the verb-to-noun lexicon has an entry. Unknown tokens
    pass through unchanged."""
    result: list[list[LemmaTriple]] = []
    for sentence_index, tokens in enumerate(sentences):
        triples = []
        for token in tokens:
            lemma = analyzer.lemma_for(token.text)
            triples.append(
                LemmaTriple(
                    lemma=lemma,
                    pos=analyzer.pos_for(lemma),
                    ne=NE_NONE,
                    offset=token.offset,
                    length=token.length,
                    sentence_index=sentence_index,
                    surface=token.text,
                )
            )
        result.append(triples)
    return result


def _gazetteer_tags(
    triples: list[LemmaTriple], analyzer: Analyzer
) -> list[str]:
    """NE tag per triple from longest-match gazetteer lookup over surfaces."""
    gazetteer = analyzer.data.gazetteer
    tags = [NE_NONE] * len(triples)
    if not gazetteer:
        return tags
    max_len = max(len(entry) for entry in gazetteer)
    i = 0
    while i < len(triples):
        matched = 0
        for length in range(min(max_len, len(triples) - i), 0, -1):
            window = triples[i : i + length]
            key = tuple(t.surface.casefold() for t in window)
            ne = gazetteer.get(key)
            if ne is not None and all(_is_capitalized(t.surface) for t in window):
                for j in range(i, i + length):
                    tags[j] = ne
                matched = length
                break
        i += matched if matched else 1
    return tags


def annotate(
    sentences: list[list[LemmaTriple]], language: str, analyzer: Analyzer
) -> list[list[LemmaTriple]]:
    """Finalize POS from the tag lexicon and NE from the gazetteer."""
    from dataclasses import replace

    result: list[list[LemmaTriple]] = []
    for triples in sentences:
        tags = _gazetteer_tags(triples, analyzer)
        result.append(
            [
                replace(triple, pos=analyzer.pos_for(triple.lemma), ne=tag)
                for triple, tag in zip(triples, tags)
            ]
        )
    return result
