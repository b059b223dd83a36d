"""Coarse topic classifier: multinomial naive Bayes with add-one smoothing.

Topics gate the entity extraction stage (fiction and biology apply class
filters, neutral applies none), so ties resolve to neutral, the least
destructive label.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from ..errors import ModelError
from ..snapshots import read_snapshot, write_snapshot
from .types import Topic

SNAPSHOT_KIND = "topic-model"

_WORD_RE = re.compile(r"\w+")


def tokenize_for_topics(text: str) -> list[str]:
    """Whitespace-and-punctuation tokenization, lowercased."""
    return _WORD_RE.findall(text.casefold())


@dataclass
class TopicModel:
    log_priors: dict[str, float] = field(default_factory=dict)
    # topic -> word -> log((count + 1) / (topic total + |V|)); complete over
    # the vocabulary, so classification never needs a fallback weight.
    log_likelihoods: dict[str, dict[str, float]] = field(default_factory=dict)

    def vocabulary(self) -> set[str]:
        for table in self.log_likelihoods.values():
            return set(table)
        return set()

    def save(self, path: str | Path) -> None:
        payload = {
            "log_priors": self.log_priors,
            "log_likelihoods": self.log_likelihoods,
        }
        write_snapshot(path, SNAPSHOT_KIND, payload)

    @classmethod
    def load(cls, path: str | Path) -> "TopicModel":
        payload = read_snapshot(path, SNAPSHOT_KIND)
        return cls(
            log_priors=payload["log_priors"],
            log_likelihoods=payload["log_likelihoods"],
        )

    def export_text(self, path: str | Path) -> None:
        """Plain-text TSV export: topic, term (or *prior*), log weight."""
        with open(path, "w", encoding="utf-8") as fh:
            for topic in sorted(self.log_priors):
                fh.write(f"{topic}\t*prior*\t{self.log_priors[topic]:.10g}\n")
            for topic in sorted(self.log_likelihoods):
                table = self.log_likelihoods[topic]
                for word in sorted(table):
                    fh.write(f"{topic}\t{word}\t{table[word]:.10g}\n")


def packaged_training_corpus() -> list[tuple[str, Topic]]:
    """The small labeled corpus shipped with the package (topic TAB text)."""
    from .analyzers import packaged_data_root

    rows: list[tuple[str, Topic]] = []
    node = packaged_data_root().joinpath("topics").joinpath("train.tsv")
    for line in node.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        topic, text = line.split("\t", 1)
        rows.append((text, Topic(topic)))
    return rows


def train_topic_model(labeled_docs: Iterable[tuple[str, Topic]]) -> TopicModel:
    """Fit priors and smoothed token likelihoods from (text, topic) pairs."""
    docs = list(labeled_docs)
    if not docs:
        raise ModelError("topic training set is empty")

    doc_counts = {t.value: 0 for t in Topic}
    token_counts: dict[str, dict[str, int]] = {t.value: {} for t in Topic}
    vocabulary: set[str] = set()
    for text, topic in docs:
        label = Topic(topic).value
        doc_counts[label] += 1
        table = token_counts[label]
        for token in tokenize_for_topics(text):
            vocabulary.add(token)
            table[token] = table.get(token, 0) + 1

    missing = sorted(label for label, n in doc_counts.items() if n == 0)
    if missing:
        raise ModelError(f"topic training set lacks documents for: {missing}")

    total_docs = len(docs)
    vocab_size = len(vocabulary)
    log_priors = {
        label: math.log(n / total_docs) for label, n in doc_counts.items()
    }
    log_likelihoods: dict[str, dict[str, float]] = {}
    for label, table in token_counts.items():
        denom = sum(table.values()) + vocab_size
        log_likelihoods[label] = {
            word: math.log((table.get(word, 0) + 1) / denom) for word in vocabulary
        }
    return TopicModel(log_priors=log_priors, log_likelihoods=log_likelihoods)


def topic_log_posteriors(text: str, model: TopicModel) -> dict[str, float]:
    """Unnormalized log posterior per topic; unknown tokens are ignored."""
    if model is None or not model.log_priors:
        raise ModelError("topic model is not trained")
    scores = dict(model.log_priors)
    for token in tokenize_for_topics(text):
        for label, table in model.log_likelihoods.items():
            weight = table.get(token)
            if weight is not None:
                scores[label] += weight
    return scores


def classify_topic(text: str, model: TopicModel) -> Topic:
    """Argmax-posterior topic; exact ties resolve in favor of neutral."""
    scores = topic_log_posteriors(text, model)
    best = max(scores.values())
    tied = sorted(label for label, score in scores.items() if score == best)
    if Topic.NEUTRAL.value in tied:
        return Topic.NEUTRAL
    return Topic(tied[0])
