"""Exact ranking of a reference collection and ranking-quality measures."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .vectors import EntityVector, cosine


@dataclass
class RankedList:
    """Scores for one query, non-increasing; ties break on ascending doc id."""

    query_doc_id: str
    entries: list[tuple[str, float]] = field(default_factory=list)

    def rank_of(self, doc_id: str) -> int | None:
        """1-based rank of a document, or None if not retrieved."""
        for index, (candidate, _) in enumerate(self.entries):
            if candidate == doc_id:
                return index + 1
        return None


@dataclass
class RankingMetrics:
    r_at_k: dict[int, float]
    arr: float
    mrr: float

    def as_dict(self) -> dict:
        return {
            "r_at_k": {str(k): v for k, v in sorted(self.r_at_k.items())},
            "arr": self.arr,
            "mrr": self.mrr,
        }


def rank_collection(
    query: EntityVector,
    collection: Sequence[EntityVector],
    top_k: int | None = None,
) -> RankedList:
    """Exact cosine against every collection vector."""
    seen: set[str] = set()
    for vector in collection:
        if vector.doc_id in seen:
            raise ValueError(f"duplicate doc_id in collection: {vector.doc_id}")
        seen.add(vector.doc_id)
    scored = [(vector.doc_id, cosine(query, vector)) for vector in collection]
    scored.sort(key=lambda entry: (-entry[1], entry[0]))
    if top_k is not None:
        scored = scored[:top_k]
    return RankedList(query_doc_id=query.doc_id, entries=scored)


def _relevant_for(ranking: RankedList, truth: dict[str, set[str]]) -> set[str]:
    if ranking.query_doc_id not in truth:
        raise KeyError(f"query {ranking.query_doc_id!r} missing from ground truth")
    relevant = truth[ranking.query_doc_id]
    if not relevant:
        raise ValueError(f"query {ranking.query_doc_id!r} has no relevant documents")
    return relevant


def recall_at_k(
    rankings: Iterable[RankedList], truth: dict[str, set[str]], k: int
) -> float:
    """Mean over queries of the fraction of relevant documents in the top k."""
    totals = []
    for ranking in rankings:
        relevant = _relevant_for(ranking, truth)
        top = {doc_id for doc_id, _ in ranking.entries[:k]}
        totals.append(len(top & relevant) / len(relevant))
    if not totals:
        raise ValueError("no rankings given")
    return sum(totals) / len(totals)


def mrr(rankings: Iterable[RankedList], truth: dict[str, set[str]]) -> float:
    """Mean reciprocal rank of the first relevant document (0 if never found)."""
    values = []
    for ranking in rankings:
        relevant = _relevant_for(ranking, truth)
        reciprocal = 0.0
        for index, (doc_id, _) in enumerate(ranking.entries):
            if doc_id in relevant:
                reciprocal = 1.0 / (index + 1)
                break
        values.append(reciprocal)
    if not values:
        raise ValueError("no rankings given")
    return sum(values) / len(values)


def average_recall_rank(
    rankings: Sequence[RankedList], truth: dict[str, set[str]], max_k: int = 50
) -> float:
    """Mean of recall_at_k over k = 1..max_k (area under the recall curve)."""
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    return sum(recall_at_k(rankings, truth, k) for k in range(1, max_k + 1)) / max_k


def ranking_metrics(
    rankings: Sequence[RankedList],
    truth: dict[str, set[str]],
    ks: Sequence[int] = (1, 5, 10, 50),
    arr_max_k: int = 50,
) -> RankingMetrics:
    return RankingMetrics(
        r_at_k={k: recall_at_k(rankings, truth, k) for k in ks},
        arr=average_recall_rank(rankings, truth, arr_max_k),
        mrr=mrr(rankings, truth),
    )


def export_rankings_tsv(rankings: Iterable[RankedList], path: str | Path) -> None:
    """query_id, rank, doc_id, score with 10 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for ranking in rankings:
            for index, (doc_id, score) in enumerate(ranking.entries, start=1):
                fh.write(f"{ranking.query_doc_id}\t{index}\t{doc_id}\t{score:.10g}\n")


def read_rankings_tsv(path: str | Path) -> list[RankedList]:
    rankings: dict[str, RankedList] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            query_id, _, doc_id, score = line.split("\t")
            rankings.setdefault(query_id, RankedList(query_id)).entries.append(
                (doc_id, float(score))
            )
    return [rankings[q] for q in rankings]
