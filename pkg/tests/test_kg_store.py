"""Store ingestion, surface lookup, and ancestor traversal."""

from __future__ import annotations

import random
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgfixtures import cycle_lines, en, entity_line, pi_chain_lines
from ontosim.errors import UnknownEntityError, UnknownLanguageError
from ontosim.kg import (
    KnowledgeGraphStore,
    descendants,
    filter_dump_lines,
    ingest_dump,
    normalize_surface,
)
from ontosim.snapshots import SnapshotError


def bfs_depths(edges: dict[str, list[str]], start: str, max_depth: int) -> dict[str, int]:
    """Independent shortest-depth oracle over the combined parent relation."""
    depths = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if depths[node] >= max_depth:
            continue
        for parent in edges.get(node, []):
            if parent in edges and parent not in depths:
                depths[parent] = depths[node] + 1
                queue.append(parent)
    depths.pop(start)
    return depths


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------


def test_empty_stream_yields_empty_store():
    store = ingest_dump([], {"en"})
    assert len(store) == 0
    assert store.surface_index == {"en": {}}
    assert store.report.kept == 0


def test_label_and_alias_both_indexed(store_pi):
    assert store_pi.lookup_surface("query", "en") == {"Q4"}
    assert store_pi.lookup_surface("database query", "en") == {"Q4"}


def test_dump_brackets_and_trailing_commas_tolerated():
    lines = ["[", ""] + [line + "," for line in pi_chain_lines()] + ["]"]
    store = ingest_dump(lines, {"en"})
    assert len(store) == 5
    assert store.report.malformed == 0


def test_malformed_lines_counted_not_fatal():
    lines = pi_chain_lines() + ["{not json", '{"no_id": true}', '["list"]']
    store = ingest_dump(lines, {"en"})
    assert len(store) == 5
    assert store.report.malformed == 3
    assert len(store.report.warnings) == 3
    assert "line 6" in store.report.warnings[0]


def test_entity_filter_applies():
    store = ingest_dump(pi_chain_lines(), {"en"}, entity_filter=lambda r: r.id == "Q1")
    assert set(store.entities) == {"Q1"}
    assert store.report.skipped_by_filter == 4


def test_language_restriction_drops_other_labels():
    line = entity_line("Q1", labels={"en": "pi", "es": "pi", "de": "Kreiszahl"})
    store = ingest_dump([line], {"en", "es"})
    assert set(store.entities["Q1"].labels) == {"en", "es"}
    with pytest.raises(UnknownLanguageError):
        store.lookup_surface("Kreiszahl", "de")


def test_self_loops_and_duplicate_edges_dropped():
    line = entity_line("Q1", labels={"en": "x"}, p31=("Q1", "Q2", "Q2"), p279=("Q1",))
    store = ingest_dump([line], {"en"})
    assert store.entities["Q1"].instance_of == ("Q2",)
    assert store.entities["Q1"].subclass_of == ()


def test_disambiguation_flag_from_configured_class():
    line = entity_line("Q1", labels={"en": "x"}, p31=("Q77",))
    store = ingest_dump([line], {"en"}, disambiguation_class="Q77")
    assert store.entities["Q1"].is_disambiguation_page


def test_retained_languages_must_be_nonempty():
    with pytest.raises(ValueError):
        ingest_dump([], set())


# ---------------------------------------------------------------------------
# surface lookup
# ---------------------------------------------------------------------------


def test_lookup_absent_surface_is_empty(store_pi):
    assert store_pi.lookup_surface("nonexistent-xyz", "en") == set()


def test_lookup_is_case_insensitive(store_pi):
    assert store_pi.lookup_surface("Query", "en") == store_pi.lookup_surface("query", "en")


def test_lookup_collapses_whitespace(store_pi):
    assert store_pi.lookup_surface("  database   query ", "en") == {"Q4"}


def test_lookup_unretained_language_is_an_error_not_empty(store_pi):
    with pytest.raises(UnknownLanguageError):
        store_pi.lookup_surface("query", "fr")


def test_normalize_surface():
    assert normalize_surface("  Foo\t BAR  ") == "foo bar"


@given(st.text(max_size=40))
def test_normalize_surface_idempotent_and_case_invariant(surface):
    normalized = normalize_surface(surface)
    assert normalize_surface(normalized) == normalized
    assert normalize_surface(surface.upper()) == normalize_surface(surface.lower())
    assert normalized == "" or not normalized[0].isspace()


def test_every_surface_round_trips(store_pi, store_tax):
    for store in (store_pi, store_tax):
        for record in store.entities.values():
            for lang in store.languages:
                for surface in record.surfaces(lang):
                    assert record.id in store.lookup_surface(surface, lang)


# ---------------------------------------------------------------------------
# ancestors
# ---------------------------------------------------------------------------


def test_leaf_has_no_ancestors(store_pi):
    assert store_pi.ancestors("Q3", 3) == []


def test_pi_chain_ancestors(store_pi):
    assert store_pi.ancestors("Q1", 3) == [("Q2", 1), ("Q3", 2)]


def test_diamond_reports_minimum_depth(store_diamond):
    result = store_diamond.ancestors("Q10", 3)
    assert result == [("Q11", 1), ("Q12", 1), ("Q13", 2)]
    oracle = bfs_depths(
        {eid: list(store_diamond.parents(eid)) for eid in store_diamond.entities},
        "Q10",
        3,
    )
    assert dict(result) == oracle


def test_ancestors_depth_cap(store_pi):
    assert store_pi.ancestors("Q1", 1) == [("Q2", 1)]


def test_ancestors_monotone_in_depth(store_tax):
    for eid in store_tax.entities:
        previous: set[str] = set()
        for depth in range(1, 5):
            current = {a for a, _ in store_tax.ancestors(eid, depth)}
            assert previous <= current
            previous = current


def test_ancestors_requires_known_entity(store_pi):
    with pytest.raises(UnknownEntityError):
        store_pi.ancestors("Q999", 3)
    with pytest.raises(ValueError):
        store_pi.ancestors("Q1", 0)


def test_dangling_edges_kept_but_skipped():
    line = en("Q1", "x", p31=["Q2", "Q404"])
    store = ingest_dump([line, en("Q2", "y")], {"en"})
    assert store.entities["Q1"].instance_of == ("Q2", "Q404")
    assert store.ancestors("Q1", 3) == [("Q2", 1)]


def test_cycles_terminate():
    store = ingest_dump(cycle_lines(), {"en"})
    assert store.ancestors("Q20", 10) == [("Q21", 1), ("Q22", 2)]


def test_ancestors_match_bfs_oracle_on_random_graphs():
    rng = random.Random(31_337)
    for _ in range(5):
        n = rng.randint(10, 50)
        ids = [f"Q{i}" for i in range(n)]
        lines = []
        edges = {}
        for i, eid in enumerate(ids):
            parents = rng.sample(ids, k=rng.randint(0, 3))
            parents = [p for p in parents if p != eid]
            lines.append(en(eid, f"node {i}", p31=parents[:2], p279=parents[2:]))
            edges[eid] = list(dict.fromkeys(parents))
        store = ingest_dump(lines, {"en"})
        for eid in ids:
            for depth in (1, 2, 3, 4):
                assert dict(store.ancestors(eid, depth)) == bfs_depths(edges, eid, depth)


# ---------------------------------------------------------------------------
# transitive instance checks
# ---------------------------------------------------------------------------


def test_transitive_instance_examples(store_pi):
    assert store_pi.is_transitive_instance("Q1", "Q3", 3) is True
    assert store_pi.is_transitive_instance("Q1", "Q1", 3) is False
    assert store_pi.is_transitive_instance("Q3", "Q1", 3) is False


def test_transitive_instance_respects_depth(store_pi):
    assert store_pi.is_transitive_instance("Q1", "Q3", 1) is False
    assert store_pi.is_transitive_instance("Q1", "Q3", 2) is True


def test_transitive_instance_unknown_entity(store_pi):
    with pytest.raises(UnknownEntityError):
        store_pi.is_transitive_instance("Q999", "Q1", 3)


# ---------------------------------------------------------------------------
# persistence and determinism
# ---------------------------------------------------------------------------


def test_snapshot_round_trip(tmp_path, store_tax):
    path = tmp_path / "store.snap"
    store_tax.save(path)
    loaded = KnowledgeGraphStore.load(path)
    assert set(loaded.entities) == set(store_tax.entities)
    assert loaded.languages == store_tax.languages
    assert loaded.lookup_surface("tax", "en") == store_tax.lookup_surface("tax", "en")
    assert loaded.ancestors("Q100", 3) == store_tax.ancestors("Q100", 3)


def test_snapshot_kind_checked(tmp_path, store_pi):
    path = tmp_path / "store.snap"
    store_pi.save(path)
    from ontosim.snapshots import read_snapshot

    with pytest.raises(SnapshotError):
        read_snapshot(path, "entity-vectors")


def test_double_ingestion_is_byte_identical(tmp_path):
    lines = pi_chain_lines()
    a, b = tmp_path / "a.snap", tmp_path / "b.snap"
    ingest_dump(list(lines), {"en"}).save(a)
    ingest_dump(list(lines), {"en"}).save(b)
    assert a.read_bytes() == b.read_bytes()


def test_language_counts(store_pi):
    assert store_pi.language_counts() == {"en": 5}


# ---------------------------------------------------------------------------
# subset extraction
# ---------------------------------------------------------------------------


def test_descendants_full_closure(store_pi):
    assert descendants(store_pi, "Q3") == {"Q3", "Q2", "Q1"}
    assert descendants(store_pi, "Q3", max_depth=1) == {"Q3", "Q2"}


def test_descendants_terminates_on_cycles():
    store = ingest_dump(cycle_lines(), {"en"})
    assert descendants(store, "Q20") == {"Q20", "Q21", "Q22"}


def test_filter_dump_lines_passes_payload_through():
    lines = ["["] + [line + "," for line in pi_chain_lines()] + ["]", "{bad"]
    kept = list(filter_dump_lines(lines, {"Q1", "Q3"}))
    assert len(kept) == 2
    assert '"id": "Q1"' in kept[0] and '"id": "Q3"' in kept[1]
    # output is re-ingestable
    store = ingest_dump(kept, {"en"})
    assert set(store.entities) == {"Q1", "Q3"}


def test_unreadable_stream_is_fatal():
    from ontosim.errors import DumpError

    def broken_stream():
        yield en("Q1", "x")
        raise OSError("stream interrupted")

    with pytest.raises(DumpError):
        ingest_dump(broken_stream(), {"en"})


def test_transitive_instance_consistent_with_ancestors_on_dangling():
    store = ingest_dump([en("Q1", "x", p31=["Q404"])], {"en"})
    assert store.ancestors("Q1", 3) == []
    assert store.is_transitive_instance("Q1", "Q404", 3) is False


def test_transitive_instance_agrees_with_ancestors_everywhere(store_rules):
    for eid in list(store_rules.entities)[:40]:
        reachable = {a for a, _ in store_rules.ancestors(eid, 3)}
        for target in ("Q900", "Q905", "Q112", "Q404"):
            assert store_rules.is_transitive_instance(eid, target, 3) == (
                target in reachable
            )


def test_lookup_is_unicode_normalization_insensitive():
    composed = "café"            # e with acute, precomposed
    decomposed = "café"         # e + combining acute
    store = ingest_dump([en("Q1", composed)], {"en"})
    assert store.lookup_surface(decomposed, "en") == {"Q1"}
    assert normalize_surface(composed) == normalize_surface(decomposed)
