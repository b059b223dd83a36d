"""Hierarchy-enhanced vector construction and cosine similarity."""

from __future__ import annotations

import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgfixtures import en
from ontosim.kg import ingest_dump
from ontosim.linking import BagOfEntities
from ontosim.vectors import (
    EntityVector,
    build_vector,
    cosine,
    export_vectors_tsv,
    load_vectors,
    save_vectors,
)

ALLOWED_WEIGHTS = {1.0, 1.0 / 4.0, 1.0 / 9.0, 1.0 / 16.0}


def bag_of(*entity_ids) -> BagOfEntities:
    bag = BagOfEntities()
    for index, eid in enumerate(entity_ids):
        bag.add(eid, (0, index, 1))
    return bag


def vec(doc_id, **weights) -> EntityVector:
    return EntityVector.from_weights(doc_id, dict(weights))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def test_empty_bag_empty_vector(store_pi):
    vector = build_vector(BagOfEntities(), store_pi)
    assert len(vector) == 0 and not vector


def test_pi_chain_weights_exact(store_pi):
    vector = build_vector(bag_of("Q1"), store_pi)
    assert vector.weights == {"Q1": 1.0, "Q2": 1.0 / 4.0, "Q3": 1.0 / 9.0}
    assert vector.weights["Q2"] == 0.25


def test_direct_occurrence_beats_ancestor_weight(store_pi):
    vector = build_vector(bag_of("Q1", "Q2"), store_pi)
    assert vector.weights["Q2"] == 1.0
    assert vector.weights["Q3"] == 1.0 / 4.0  # now at depth 1 from Q2


def test_mention_counts_do_not_change_weights(store_pi):
    once = build_vector(bag_of("Q1"), store_pi)
    bag = bag_of("Q1")
    bag.add("Q1", (0, 5, 1))
    twice = build_vector(bag, store_pi)
    assert once.weights == twice.weights


def test_max_depth_limits_expansion(store_pi):
    vector = build_vector(bag_of("Q1"), store_pi, max_depth=1)
    assert vector.weights == {"Q1": 1.0, "Q2": 1.0 / 4.0}


def test_weights_are_id_sorted(store_tax):
    vector = build_vector(bag_of("Q103", "Q100"), store_tax)
    assert list(vector.weights) == sorted(vector.weights)


def test_weight_table_membership(store_tax):
    vector = build_vector(bag_of("Q100", "Q102", "Q103"), store_tax)
    assert set(vector.weights.values()) <= ALLOWED_WEIGHTS


def test_build_vector_matches_bruteforce_oracle():
    rng = random.Random(424_242)
    ids = [f"Q{i}" for i in range(100)]
    lines = []
    edges: dict[str, list[str]] = {}
    for i, eid in enumerate(ids):
        parents = [p for p in rng.sample(ids, k=rng.randint(0, 3)) if p != eid]
        lines.append(en(eid, f"node {i}", p31=parents))
        edges[eid] = list(dict.fromkeys(parents))
    store = ingest_dump(lines, {"en"})
    bag_ids = rng.sample(ids, k=12)

    # oracle: full BFS per bag entity, max-combination
    expected: dict[str, float] = {}
    for eid in bag_ids:
        expected[eid] = 1.0
    for eid in bag_ids:
        depths = {eid: 0}
        queue = deque([eid])
        while queue:
            node = queue.popleft()
            if depths[node] >= 3:
                continue
            for parent in edges[node]:
                if parent not in depths:
                    depths[parent] = depths[node] + 1
                    queue.append(parent)
        for node, depth in depths.items():
            if depth == 0:
                continue
            weight = 1.0 / ((depth + 1) ** 2)
            if weight > expected.get(node, 0.0):
                expected[node] = weight

    vector = build_vector(bag_of(*bag_ids), store)
    assert vector.weights == expected


# ---------------------------------------------------------------------------
# cosine
# ---------------------------------------------------------------------------


def test_cosine_self_similarity():
    v = vec("a", x=1.0, y=0.25, z=1.0 / 9.0)
    assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)


def test_cosine_disjoint_support_is_zero():
    assert cosine(vec("a", x=1.0), vec("b", y=1.0)) == 0.0


def test_cosine_hand_example():
    a = vec("a", x=1.0, y=1.0)
    b = vec("b", x=1.0, z=1.0)
    assert cosine(a, b) == pytest.approx(0.5, abs=1e-12)


def test_cosine_empty_vector_is_zero():
    assert cosine(vec("a"), vec("b", x=1.0)) == 0.0
    assert cosine(vec("a"), vec("b")) == 0.0


@settings(max_examples=60)
@given(
    st.dictionaries(st.sampled_from("abcdefgh"), st.floats(0.01, 1.0), max_size=6),
    st.dictionaries(st.sampled_from("abcdefgh"), st.floats(0.01, 1.0), max_size=6),
)
def test_cosine_symmetric(wa, wb):
    a, b = vec("a", **wa), vec("b", **wb)
    assert cosine(a, b) == pytest.approx(cosine(b, a), abs=1e-12)
    assert 0.0 <= cosine(a, b) <= 1.0


@settings(max_examples=60)
@given(
    st.dictionaries(st.sampled_from("abcdefgh"), st.floats(0.01, 1.0), min_size=1, max_size=6),
    st.dictionaries(st.sampled_from("abcdefgh"), st.floats(0.01, 1.0), min_size=1, max_size=6),
    st.floats(0.001, 1000.0),
)
def test_cosine_scale_free(wa, wb, c):
    a, b = vec("a", **wa), vec("b", **wb)
    scaled = vec("a", **{k: v * c for k, v in wa.items()})
    assert cosine(scaled, b) == pytest.approx(cosine(a, b), abs=1e-12)


def test_hierarchy_effect_links_child_and_parent(store_pi):
    child = build_vector(bag_of("Q1"), store_pi, doc_id="child")
    parent = build_vector(bag_of("Q2"), store_pi, doc_id="parent")
    assert cosine(child, parent) > 0.0

    # without ancestor expansion the same bags share nothing
    flat_child = vec("child", Q1=1.0)
    flat_parent = vec("parent", Q2=1.0)
    assert cosine(flat_child, flat_parent) == 0.0


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def test_snapshot_round_trip(tmp_path, store_pi):
    vectors = {
        "d1": build_vector(bag_of("Q1"), store_pi, doc_id="d1"),
        "d2": build_vector(bag_of("Q2"), store_pi, doc_id="d2"),
    }
    path = tmp_path / "vectors.snap"
    save_vectors(vectors, path)
    loaded = load_vectors(path)
    assert set(loaded) == {"d1", "d2"}
    assert loaded["d1"].weights == vectors["d1"].weights
    assert loaded["d1"].norm == pytest.approx(vectors["d1"].norm, abs=1e-15)


def test_tsv_export_ten_significant_digits(tmp_path, store_pi):
    vectors = {"d1": build_vector(bag_of("Q1"), store_pi, doc_id="d1")}
    path = tmp_path / "vectors.tsv"
    export_vectors_tsv(vectors, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "d1\tQ1\t1"
    assert lines[2] == f"d1\tQ3\t{1.0 / 9.0:.10g}"
    assert "0.1111111111" in lines[2]
