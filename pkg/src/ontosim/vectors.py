"""Hierarchy-enhanced sparse entity vectors and cosine similarity.

A document's vector holds weight 1.0 for every entity in its bag (boolean,
not term frequency) plus weight (m+1)^-2 for each ancestor at combined-edge
distance m in {1..max_depth}. When an id is reachable several ways, the
maximum weight wins, so a directly occurring entity always keeps weight 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .kg.store import KnowledgeGraphStore
from .linking import BagOfEntities
from .snapshots import read_snapshot, write_snapshot

SNAPSHOT_KIND = "entity-vectors"

DEFAULT_MAX_DEPTH = 3


def ancestor_weight(depth: int) -> float:
    return 1.0 / ((depth + 1) ** 2)


@dataclass(frozen=True)
class EntityVector:
    """Immutable sparse vector; weights are stored id-sorted."""

    doc_id: str
    weights: dict[str, float]
    norm: float

    @classmethod
    def from_weights(cls, doc_id: str, weights: dict[str, float]) -> "EntityVector":
        ordered = {eid: weights[eid] for eid in sorted(weights) if weights[eid] != 0.0}
        norm = math.sqrt(sum(w * w for w in ordered.values()))
        return cls(doc_id=doc_id, weights=ordered, norm=norm)

    def __len__(self) -> int:
        return len(self.weights)

    def __bool__(self) -> bool:
        return bool(self.weights)


def build_vector(
    bag: BagOfEntities,
    store: KnowledgeGraphStore,
    max_depth: int = DEFAULT_MAX_DEPTH,
    doc_id: str = "",
) -> EntityVector:
    """Expand a bag of entities into its hierarchy-enhanced vector."""
    weights: dict[str, float] = {}
    for entity_id in bag.entity_ids():
        weights[entity_id] = 1.0
    for entity_id in bag.entity_ids():
        for ancestor, depth in store.ancestors(entity_id, max_depth):
            weight = ancestor_weight(depth)
            if weight > weights.get(ancestor, 0.0):
                weights[ancestor] = weight
    return EntityVector.from_weights(doc_id, weights)


def cosine(a: EntityVector, b: EntityVector) -> float:
    """Cosine similarity in [0, 1]; 0 when either vector is empty."""
    if not a.weights or not b.weights:
        return 0.0
    small, large = (a, b) if len(a.weights) <= len(b.weights) else (b, a)
    dot = 0.0
    for eid, weight in small.weights.items():
        other = large.weights.get(eid)
        if other is not None:
            dot += weight * other
    if dot == 0.0:
        return 0.0
    value = dot / (a.norm * b.norm)
    return min(1.0, max(0.0, value))


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def save_vectors(vectors: dict[str, EntityVector], path: str | Path) -> None:
    payload = {
        "vectors": [
            [doc_id, [[eid, w] for eid, w in vectors[doc_id].weights.items()]]
            for doc_id in sorted(vectors)
        ]
    }
    write_snapshot(path, SNAPSHOT_KIND, payload)


def load_vectors(path: str | Path) -> dict[str, EntityVector]:
    payload = read_snapshot(path, SNAPSHOT_KIND)
    out: dict[str, EntityVector] = {}
    for doc_id, pairs in payload["vectors"]:
        out[doc_id] = EntityVector.from_weights(doc_id, {eid: w for eid, w in pairs})
    return out


def export_vectors_tsv(vectors: dict[str, EntityVector], path: str | Path) -> None:
    """Debug export: doc_id, entity id, weight with 10 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc_id in sorted(vectors):
            for eid, weight in vectors[doc_id].weights.items():
                fh.write(f"{doc_id}\t{eid}\t{weight:.10g}\n")
