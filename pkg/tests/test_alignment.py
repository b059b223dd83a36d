"""Fragmentation, fragment matching, merging, and threshold tuning."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from docbuild import make_doc
from kgfixtures import en
from ontosim.alignment import (
    Fragment,
    FragmentPair,
    Span,
    char_gap,
    fragment_document,
    merge_and_classify,
    retrieve_fragment_matches,
    tune_thresholds,
)
from ontosim.alignment.metrics import PlagiarismCase
from ontosim.kg import ingest_dump
from ontosim.linking import LinkerConfig
from ontosim.vectors import EntityVector


@pytest.fixture(scope="module")
def word_store():
    lines = [en(f"Q{i}", f"word{i}") for i in range(30)]
    return ingest_dump(lines, {"en"})


def sentence_doc(n_sentences, doc_id="doc"):
    """Each sentence holds two linkable lemmas, distinct per sentence."""
    sentences = [
        [f"word{2 * i % 30}", f"word{(2 * i + 1) % 30}"] for i in range(n_sentences)
    ]
    return make_doc(sentences, doc_id=doc_id)


def frag(doc_id, first_sentence, offset, length, score_weights=None) -> Fragment:
    vector = EntityVector.from_weights(
        f"{doc_id}#{first_sentence}", score_weights or {}
    )
    return Fragment(
        doc_id=doc_id,
        first_sentence=first_sentence,
        sentence_count=6,
        char_offset=offset,
        char_length=length,
        vector=vector,
    )


def pair(susp_offset, src_offset, score, susp_doc="s", src_doc="t", length=100) -> FragmentPair:
    return FragmentPair(
        suspicious=frag(susp_doc, susp_offset // 10, susp_offset, length),
        source=frag(src_doc, src_offset // 10, src_offset, length),
        score=score,
    )


# ---------------------------------------------------------------------------
# fragmentation
# ---------------------------------------------------------------------------


def layout(fragments):
    return [(f.first_sentence, f.sentence_count) for f in fragments]


def test_six_sentence_doc_single_fragment(word_store):
    fragments = fragment_document(sentence_doc(6), word_store, LinkerConfig())
    assert layout(fragments) == [(0, 6)]


def test_nine_sentence_doc(word_store):
    fragments = fragment_document(sentence_doc(9), word_store, LinkerConfig())
    assert layout(fragments) == [(0, 6), (3, 6)]


def test_ten_sentence_doc(word_store):
    fragments = fragment_document(sentence_doc(10), word_store, LinkerConfig())
    assert layout(fragments) == [(0, 6), (3, 6), (6, 4)]


def test_short_doc_one_fragment(word_store):
    fragments = fragment_document(sentence_doc(2), word_store, LinkerConfig())
    assert layout(fragments) == [(0, 2)]


def test_zero_sentence_doc_empty(word_store):
    fragments = fragment_document(make_doc([]), word_store, LinkerConfig())
    assert fragments == []


def test_invalid_window_step(word_store):
    with pytest.raises(ValueError):
        fragment_document(sentence_doc(6), word_store, LinkerConfig(), window=2, step=3)
    with pytest.raises(ValueError):
        fragment_document(sentence_doc(6), word_store, LinkerConfig(), step=0)


def test_every_sentence_covered(word_store):
    for n in (1, 5, 6, 7, 9, 10, 14, 17):
        fragments = fragment_document(sentence_doc(n), word_store, LinkerConfig())
        covered = set()
        for fragment in fragments:
            covered.update(
                range(fragment.first_sentence, fragment.first_sentence + fragment.sentence_count)
            )
        assert covered == set(range(n))


def test_fragment_char_span_is_sentence_hull(word_store):
    doc = sentence_doc(10)
    for fragment in fragment_document(doc, word_store, LinkerConfig()):
        first = doc.sentences[fragment.first_sentence][0]
        last = doc.sentences[fragment.first_sentence + fragment.sentence_count - 1][-1]
        assert fragment.char_offset == first.offset
        assert fragment.char_offset + fragment.char_length == last.end()


def test_fragment_vectors_built_from_own_sentences(word_store):
    doc = sentence_doc(9)
    fragments = fragment_document(doc, word_store, LinkerConfig())
    assert all(len(f.vector) > 0 for f in fragments)
    # sentences 0..5 carry word0..word11; the second window (3..8) starts at word6
    assert "Q0" in fragments[0].vector.weights
    assert "Q0" not in fragments[1].vector.weights
    assert "Q6" in fragments[1].vector.weights


# ---------------------------------------------------------------------------
# fragment matching
# ---------------------------------------------------------------------------


def test_zero_similarity_excluded():
    query = frag("q", 0, 0, 100, {"Qa": 1.0})
    sources = [frag("s", i, i * 100, 100, {"Qb": 1.0}) for i in range(4)]
    assert retrieve_fragment_matches(query, sources) == []


def test_identical_fragment_first():
    query = frag("q", 0, 0, 100, {"Qa": 1.0, "Qb": 1.0})
    twin = frag("s", 3, 300, 100, {"Qa": 1.0, "Qb": 1.0})
    other = frag("s", 6, 600, 100, {"Qa": 1.0, "Qc": 1.0})
    result = retrieve_fragment_matches(query, [other, twin])
    assert result[0].source is twin
    assert result[0].score == pytest.approx(1.0, abs=1e-12)


def test_top_five_in_hand_computed_order():
    query = frag("q", 0, 0, 100, {"Qa": 1.0})
    weights = [1.0, 0.8, 0.6, 0.5, 0.4, 0.2, 0.1]
    sources = [
        frag("s", i, i * 100, 100, {"Qa": w, "Qb": (1 - w)}) for i, w in enumerate(weights)
    ]
    result = retrieve_fragment_matches(query, sources, k=5)
    assert len(result) == 5
    scores = [p.score for p in result]
    assert scores == sorted(scores, reverse=True)
    assert [p.source.first_sentence for p in result] == [0, 1, 2, 3, 4]


def test_same_document_never_paired():
    query = frag("q", 0, 0, 100, {"Qa": 1.0})
    sources = [frag("q", 3, 300, 100, {"Qa": 1.0})]
    assert retrieve_fragment_matches(query, sources) == []


# ---------------------------------------------------------------------------
# merging
# ---------------------------------------------------------------------------


def test_char_gap():
    assert char_gap(0, 100, 100, 50) == 0
    assert char_gap(0, 100, 50, 100) == 0
    assert char_gap(0, 100, 150, 50) == 50
    assert char_gap(150, 50, 0, 100) == 50


def test_single_pair_below_threshold_no_detection():
    detections = merge_and_classify([pair(0, 0, 0.4)], 1200, 0.7)
    assert detections == []


def test_adjacent_pairs_merge_and_accumulate():
    pairs = [pair(0, 0, 0.4), pair(100, 100, 0.4)]
    detections = merge_and_classify(pairs, 1200, 0.7)
    assert len(detections) == 1
    detection = detections[0]
    assert detection.score == pytest.approx(0.8)
    assert detection.suspicious == Span("s", 0, 200)
    assert detection.source == Span("t", 0, 200)


def test_both_sides_rule_keeps_far_sources_apart():
    # suspicious spans touch; source spans are 5000 chars apart
    pairs = [pair(0, 0, 0.8), pair(50, 5000, 0.8)]
    detections = merge_and_classify(pairs, 1200, 0.5, merge_rule="both")
    assert len(detections) == 2
    merged = merge_and_classify(pairs, 1200, 0.5, merge_rule="either")
    assert len(merged) == 1


def test_merging_is_transitive():
    pairs = [pair(0, 0, 0.2), pair(1000, 1000, 0.2), pair(2000, 2000, 0.2)]
    # 0 and 2000 are >1200 apart, but chain through the middle pair
    detections = merge_and_classify(pairs, 1200, 0.5)
    assert len(detections) == 1
    assert detections[0].score == pytest.approx(0.6)


def test_merge_is_order_independent():
    rng = random.Random(99)
    pairs = [
        pair(rng.randrange(0, 4000), rng.randrange(0, 4000), 0.2 + 0.1 * (i % 3))
        for i in range(12)
    ]
    baseline = merge_and_classify(pairs, 800, 0.3)
    for _ in range(10):
        shuffled = pairs[:]
        rng.shuffle(shuffled)
        assert merge_and_classify(shuffled, 800, 0.3) == baseline


@settings(max_examples=40)
@given(st.permutations(range(8)), st.sampled_from([300, 800, 1500]))
def test_merge_order_independent_property(order, threshold):
    base = [pair(i * 400, (7 - i) * 400, 0.15 + 0.05 * i) for i in range(8)]
    reordered = [base[i] for i in order]
    assert merge_and_classify(reordered, threshold, 0.3) == merge_and_classify(
        base, threshold, 0.3
    )


def test_groups_are_per_document_pair():
    pairs = [pair(0, 0, 0.5), pair(0, 0, 0.5, src_doc="u")]
    detections = merge_and_classify(pairs, 1200, 0.4)
    assert len(detections) == 2
    assert {d.source.doc_id for d in detections} == {"t", "u"}


def test_raising_score_threshold_never_adds_detections():
    rng = random.Random(5)
    pairs = [
        pair(rng.randrange(0, 3000), rng.randrange(0, 3000), rng.uniform(0.1, 0.6))
        for i in range(15)
    ]
    counts = [
        len(merge_and_classify(pairs, 900, threshold))
        for threshold in (0.2, 0.4, 0.6, 0.8, 1.0)
    ]
    assert counts == sorted(counts, reverse=True)


def test_invalid_thresholds_rejected():
    with pytest.raises(ValueError):
        merge_and_classify([], 0, 0.5)
    with pytest.raises(ValueError):
        merge_and_classify([], 100, 0.0)
    with pytest.raises(ValueError):
        merge_and_classify([], 100, 0.5, merge_rule="sometimes")


# ---------------------------------------------------------------------------
# threshold tuning
# ---------------------------------------------------------------------------


def tuning_case():
    return PlagiarismCase(
        suspicious=Span("s", 0, 200), source=Span("t", 0, 200), obfuscation="automatic"
    )


def test_one_point_grid_selected():
    result = tune_thresholds(
        [pair(0, 0, 0.5)], [tuning_case()], char_grid=[800], score_grid=[0.4]
    )
    assert result.best_char_distance == 800
    assert result.best_score_threshold == 0.4
    assert len(result.table) == 1


def test_empty_grid_errors():
    with pytest.raises(ValueError):
        tune_thresholds([pair(0, 0, 0.5)], [tuning_case()], char_grid=[], score_grid=[0.4])
    with pytest.raises(ValueError):
        tune_thresholds([pair(0, 0, 0.5)], [tuning_case()], char_grid=[800], score_grid=[])
    with pytest.raises(ValueError):
        tune_thresholds([pair(0, 0, 0.5)], [], char_grid=[800], score_grid=[0.4])


def test_equal_quality_ties_to_smaller_score_threshold():
    # both score thresholds admit the same single detection
    result = tune_thresholds(
        [pair(0, 0, 0.9)],
        [tuning_case()],
        char_grid=[600, 1200],
        score_grid=[0.45, 0.30],
    )
    assert result.best_score_threshold == 0.30
    assert result.best_char_distance == 600


def test_constructed_fixture_where_1200_045_wins():
    # A and B merge only at distance >= 1200 and reach the 0.45 threshold
    # together; junk pair C sits 2000 chars away, alone under every sane
    # threshold but polluting the hull at distance 2400 and slipping through
    # as its own detection at score threshold 0.30.
    a = pair(0, 0, 0.25)
    b = pair(900, 900, 0.25)
    junk = pair(2900, 2900, 0.4)
    case = PlagiarismCase(
        suspicious=Span("s", 0, 1000), source=Span("t", 0, 1000), obfuscation="automatic"
    )
    result = tune_thresholds(
        [a, b, junk],
        [case],
        char_grid=[600, 1200, 2400],
        score_grid=[0.30, 0.45, 0.60, 0.75],
    )
    assert (result.best_char_distance, result.best_score_threshold) == (1200, 0.45)
    assert result.best_plagdet == 1.0


def test_same_language_fragments_not_paired_when_tagged():
    from dataclasses import replace

    query = replace(frag("q", 0, 0, 100, {"Qa": 1.0}), language="en")
    same = replace(frag("s", 0, 0, 100, {"Qa": 1.0}), language="en")
    other = replace(frag("t", 0, 0, 100, {"Qa": 1.0}), language="es")
    untagged = frag("u", 0, 0, 100, {"Qa": 1.0})
    result = retrieve_fragment_matches(query, [same, other, untagged])
    assert {p.source.doc_id for p in result} == {"t", "u"}
