"""Entity extraction and disambiguation.

Extraction maps contiguous lemma n-grams (longest first) to knowledge-graph
candidates through the surface index, with a coarse topic filter. Rule-based
filters then discard noise candidates, and each surviving mention resolves to
the one candidate whose ontological ancestors overlap most with the entities
mentioned nearby.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import UnknownLanguageError
from .kg.store import KnowledgeGraphStore
from .text.analyzers import is_han_character
from .text.types import NE_NONE, LemmaTriple, PreprocessedDocument, Topic

# POS tags whose tokens never ground an entity mention (punctuation,
# adpositions, symbols, personal pronouns).
FILTERED_POS = frozenset({"PUNCT", "ADP", "SYM", "PRON"})

# Well-known public Wikidata class ids; fixture graphs override these.
DEFAULT_CLASS_IDS = {
    "creative_work": "Q386724",
    "gene": "Q7187",
    "natural_number": "Q21199",
    "human": "Q5",
    "location": "Q2221906",
    "organization": "Q43229",
}


@dataclass
class LinkerConfig:
    max_ngram: int = 3
    ancestor_depth: int = 3
    topic_filter_depth: int = 3
    context_window: int = 2
    no_space_languages: frozenset = frozenset({"ja", "zh"})
    class_ids: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_CLASS_IDS))
    stopwords: dict[str, frozenset] = field(default_factory=dict)

    def class_id(self, name: str) -> str:
        return self.class_ids.get(name, DEFAULT_CLASS_IDS[name])

    def joiner_for(self, language: str) -> str:
        return "" if language in self.no_space_languages else " "


@dataclass(frozen=True)
class MentionCandidate:
    """One lemma n-gram with its non-empty set of entity candidates."""

    sentence_index: int
    start: int
    n: int
    surface_lemmas: str
    candidates: frozenset
    source_triples: tuple[LemmaTriple, ...]

    @property
    def span(self) -> tuple[int, int, int]:
        return (self.sentence_index, self.start, self.n)


@dataclass
class BagOfEntities:
    """Disambiguated entities with mention counts and provenance spans."""

    counts: Counter = field(default_factory=Counter)
    provenance: dict[str, list[tuple[int, int, int]]] = field(default_factory=dict)

    def add(self, entity_id: str, span: tuple[int, int, int]) -> None:
        self.counts[entity_id] += 1
        self.provenance.setdefault(entity_id, []).append(span)

    def entity_ids(self) -> list[str]:
        return sorted(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self.counts


@dataclass
class LinkerStats:
    """Per-document counters for the run report."""

    mentions_found: int = 0
    filtered_pos: int = 0
    filtered_stopword: int = 0
    filtered_han: int = 0
    filtered_disambiguation: int = 0
    filtered_numeric: int = 0
    filtered_ne_mismatch: int = 0
    mentions_dropped: int = 0
    mentions_disambiguated: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(vars(self))


def _topic_class(topic: Topic, config: LinkerConfig) -> str | None:
    if topic == Topic.FICTION:
        return config.class_id("creative_work")
    if topic == Topic.BIOLOGY:
        return config.class_id("gene")
    return None


def extract_candidates(
    doc: PreprocessedDocument,
    store: KnowledgeGraphStore,
    topic: Topic,
    config: LinkerConfig,
) -> list[MentionCandidate]:
    """All lemma n-gram mentions with entity candidates, longest-match first.

    Once an n-gram yields candidates its positions are excluded from shorter
    lookups, so no two mentions ever cover the same (sentence, position).
    The coarse topic filter applies after position assignment, keeping the
    candidate pool of a filtered run a subset of the neutral run's pool.
    """
    if doc.language not in store.languages:
        raise UnknownLanguageError(
            f"document language {doc.language!r} not retained by the store"
        )
    joiner = config.joiner_for(doc.language)
    filter_class = _topic_class(topic, config)

    mentions: list[MentionCandidate] = []
    for sentence_index, triples in enumerate(doc.sentences):
        covered = [False] * len(triples)
        for n in range(min(config.max_ngram, len(triples)), 0, -1):
            for start in range(0, len(triples) - n + 1):
                if any(covered[start : start + n]):
                    continue
                surface = joiner.join(t.lemma for t in triples[start : start + n])
                found = store.lookup_surface(surface, doc.language)
                if not found:
                    continue
                for i in range(start, start + n):
                    covered[i] = True
                if filter_class is not None:
                    found = {
                        c
                        for c in found
                        if store.is_transitive_instance(
                            c, filter_class, config.topic_filter_depth
                        )
                    }
                if found:
                    mentions.append(
                        MentionCandidate(
                            sentence_index=sentence_index,
                            start=start,
                            n=n,
                            surface_lemmas=surface,
                            candidates=frozenset(found),
                            source_triples=tuple(triples[start : start + n]),
                        )
                    )
    mentions.sort(key=lambda m: (m.sentence_index, m.start))
    return mentions


def _has_numeric_label(store: KnowledgeGraphStore, entity_id: str) -> bool:
    record = store.entity(entity_id)
    return any(label.isdigit() for label in record.labels.values())


def _rule_filter(
    mention: MentionCandidate,
    doc: PreprocessedDocument,
    store: KnowledgeGraphStore,
    config: LinkerConfig,
    stats: LinkerStats,
) -> set[str]:
    """Apply the candidate removal rules; returns the surviving candidates."""
    # Mention-level rules kill every candidate at once.
    if all(t.pos in FILTERED_POS for t in mention.source_triples):
        stats.filtered_pos += len(mention.candidates)
        return set()
    stopwords = config.stopwords.get(doc.language, frozenset())
    if mention.surface_lemmas in stopwords:
        stats.filtered_stopword += len(mention.candidates)
        return set()
    if (
        doc.language in config.no_space_languages
        and len(mention.surface_lemmas) == 1
        and is_han_character(mention.surface_lemmas)
    ):
        stats.filtered_han += len(mention.candidates)
        return set()

    ne_tags = {t.ne for t in mention.source_triples if t.ne != NE_NONE}
    survivors = set()
    for candidate in mention.candidates:
        record = store.entity(candidate)
        if record.is_disambiguation_page:
            stats.filtered_disambiguation += 1
            continue
        if store.is_transitive_instance(
            candidate, config.class_id("natural_number"), config.ancestor_depth
        ) and _has_numeric_label(store, candidate):
            stats.filtered_numeric += 1
            continue
        if ne_tags and not all(
            store.is_transitive_instance(
                candidate, config.class_id(tag), config.ancestor_depth
            )
            for tag in ne_tags
        ):
            stats.filtered_ne_mismatch += 1
            continue
        survivors.add(candidate)
    return survivors


def disambiguate(
    mentions: list[MentionCandidate],
    doc: PreprocessedDocument,
    store: KnowledgeGraphStore,
    config: LinkerConfig,
    stats: LinkerStats | None = None,
) -> BagOfEntities:
    """Resolve each mention to at most one entity.

    After rule filtering, the surviving candidate with the most ancestors
    among the surrounding mentions' candidates wins; ties go to the candidate
    with more ancestors overall, then to the smaller entity id. Mentions with
    no survivors are dropped (counted, never replaced by a fallback).
    """
    stats = stats if stats is not None else LinkerStats()
    stats.mentions_found += len(mentions)

    surviving: list[set[str]] = [
        _rule_filter(m, doc, store, config, stats) for m in mentions
    ]

    ancestor_sets: dict[str, frozenset] = {}

    def ancestors_of(entity_id: str) -> frozenset:
        cached = ancestor_sets.get(entity_id)
        if cached is None:
            cached = frozenset(
                a for a, _ in store.ancestors(entity_id, config.ancestor_depth)
            )
            ancestor_sets[entity_id] = cached
        return cached

    bag = BagOfEntities()
    for index, mention in enumerate(mentions):
        candidates = surviving[index]
        if not candidates:
            stats.mentions_dropped += 1
            continue
        context: set[str] = set()
        for other_index, other in enumerate(mentions):
            if other_index == index:
                continue
            if abs(other.sentence_index - mention.sentence_index) <= config.context_window:
                context.update(surviving[other_index])
        best = min(
            candidates,
            key=lambda c: (
                -len(ancestors_of(c) & context),
                -len(ancestors_of(c)),
                c,
            ),
        )
        bag.add(best, mention.span)
        stats.mentions_disambiguated += 1
    return bag


def link(
    doc: PreprocessedDocument,
    store: KnowledgeGraphStore,
    config: LinkerConfig,
    stats: LinkerStats | None = None,
) -> BagOfEntities:
    """Extract candidates for a preprocessed document and disambiguate them."""
    mentions = extract_candidates(doc, store, doc.topic, config)
    return disambiguate(mentions, doc, store, config, stats=stats)
