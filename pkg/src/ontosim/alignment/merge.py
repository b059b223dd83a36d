"""Merge nearby fragment pairs and threshold them into detections."""

from __future__ import annotations

from typing import Literal, NamedTuple

from .fragments import FragmentPair


class Span(NamedTuple):
    doc_id: str
    offset: int
    length: int

    @property
    def end(self) -> int:
        return self.offset + self.length


class Detection(NamedTuple):
    """An aligned suspicious/source passage with its accumulated score."""

    suspicious: Span
    source: Span
    score: float


def char_gap(a_offset: int, a_length: int, b_offset: int, b_length: int) -> int:
    """Character distance between two spans; 0 when they touch or overlap."""
    return max(0, max(a_offset, b_offset) - min(a_offset + a_length, b_offset + b_length))


def _pair_gap(a: FragmentPair, b: FragmentPair) -> tuple[int, int]:
    susp = char_gap(
        a.suspicious.char_offset, a.suspicious.char_length,
        b.suspicious.char_offset, b.suspicious.char_length,
    )
    src = char_gap(
        a.source.char_offset, a.source.char_length,
        b.source.char_offset, b.source.char_length,
    )
    return susp, src


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def merge_and_classify(
    pairs: list[FragmentPair],
    char_distance_threshold: int,
    score_threshold: float,
    merge_rule: Literal["both", "either"] = "both",
) -> list[Detection]:
    """Cluster fragment pairs per document pair and keep strong clusters.

    Two pairs merge when their suspicious-side gap and source-side gap are
    both below the distance threshold (``either`` relaxes this to one side).
    Merging is transitive; a cluster's spans are the covering hulls of its
    members and its score is the sum of member scores. Clusters whose
    accumulated score reaches ``score_threshold`` become detections.
    """
    if char_distance_threshold <= 0 or score_threshold <= 0:
        raise ValueError("thresholds must be positive")
    if merge_rule not in ("both", "either"):
        raise ValueError(f"unknown merge rule {merge_rule!r}")

    groups: dict[tuple[str, str], list[FragmentPair]] = {}
    for pair in pairs:
        key = (pair.suspicious.doc_id, pair.source.doc_id)
        groups.setdefault(key, []).append(pair)

    detections: list[Detection] = []
    for (susp_doc, src_doc), members in groups.items():
        uf = _UnionFind(len(members))
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                susp_gap, src_gap = _pair_gap(members[i], members[j])
                close_susp = susp_gap < char_distance_threshold
                close_src = src_gap < char_distance_threshold
                merged = (
                    (close_susp and close_src)
                    if merge_rule == "both"
                    else (close_susp or close_src)
                )
                if merged:
                    uf.union(i, j)

        clusters: dict[int, list[FragmentPair]] = {}
        for i, member in enumerate(members):
            clusters.setdefault(uf.find(i), []).append(member)

        for cluster in clusters.values():
            # canonical member order: float summation must not depend on the
            # order the pairs arrived in
            cluster.sort(
                key=lambda p: (
                    p.suspicious.char_offset, p.suspicious.char_length,
                    p.source.char_offset, p.source.char_length, p.score,
                )
            )
            total = sum(p.score for p in cluster)
            if total < score_threshold:
                continue
            susp_start = min(p.suspicious.char_offset for p in cluster)
            susp_end = max(p.suspicious.char_end for p in cluster)
            src_start = min(p.source.char_offset for p in cluster)
            src_end = max(p.source.char_end for p in cluster)
            detections.append(
                Detection(
                    suspicious=Span(susp_doc, susp_start, susp_end - susp_start),
                    source=Span(src_doc, src_start, src_end - src_start),
                    score=total,
                )
            )
    detections.sort(
        key=lambda d: (d.suspicious.doc_id, d.suspicious.offset, d.source.doc_id, d.source.offset)
    )
    return detections
