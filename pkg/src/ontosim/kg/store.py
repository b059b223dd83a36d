"""Immutable entity store with surface lookup and bounded ancestor traversal.

Ingestion is single-writer; once built, the store is never mutated, so all
query methods are safe to call from any number of concurrent readers.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from ..errors import DumpError, UnknownEntityError, UnknownLanguageError
from ..snapshots import read_snapshot, write_snapshot
from .dump import (
    DEFAULT_DISAMBIGUATION_CLASS,
    EntityRecord,
    MalformedLine,
    iter_dump_lines,
    parse_dump_line,
)

SNAPSHOT_KIND = "kg-store"

# Cap on individual malformed-line messages kept in the report; the total
# count is always exact.
MAX_WARNINGS = 100


def normalize_surface(surface: str) -> str:
    """Canonical index form: NFC-normalized, case-folded, whitespace runs
    collapsed to one space."""
    return " ".join(unicodedata.normalize("NFC", surface).casefold().split())


@dataclass
class IngestReport:
    lines_seen: int = 0
    kept: int = 0
    skipped_by_filter: int = 0
    malformed: int = 0
    warnings: list[str] = field(default_factory=list)
    language_counts: dict[str, int] = field(default_factory=dict)

    def add_warning(self, lineno: int, message: str) -> None:
        self.malformed += 1
        if len(self.warnings) < MAX_WARNINGS:
            self.warnings.append(f"line {lineno}: {message}")

    def as_text(self) -> str:
        lines = [
            "entity ingestion report",
            f"  lines with entity payload: {self.lines_seen}",
            f"  entities kept:             {self.kept}",
            f"  skipped by filter:         {self.skipped_by_filter}",
            f"  malformed lines:           {self.malformed}",
            "",
            "entities per language (label or alias present):",
        ]
        for lang in sorted(self.language_counts):
            lines.append(f"  {lang:8s} {self.language_counts[lang]}")
        if self.warnings:
            lines.append("")
            lines.append("warnings:")
            lines.extend(f"  {w}" for w in self.warnings)
        return "\n".join(lines) + "\n"


class KnowledgeGraphStore:
    """Entities plus a per-language surface index and the combined edge relation."""

    def __init__(
        self,
        entities: dict[str, EntityRecord],
        languages: Iterable[str],
        disambiguation_class: str = DEFAULT_DISAMBIGUATION_CLASS,
        report: IngestReport | None = None,
    ):
        self.entities = entities
        self.languages = frozenset(languages)
        self.disambiguation_class = disambiguation_class
        self.report = report
        self.surface_index = self._build_index()

    def _build_index(self) -> dict[str, dict[str, set[str]]]:
        index: dict[str, dict[str, set[str]]] = {lang: {} for lang in self.languages}
        for record in self.entities.values():
            for lang in self.languages:
                for surface in record.surfaces(lang):
                    key = normalize_surface(surface)
                    if key:
                        index[lang].setdefault(key, set()).add(record.id)
        return index

    def __len__(self) -> int:
        return len(self.entities)

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self.entities

    def entity(self, entity_id: str) -> EntityRecord:
        try:
            return self.entities[entity_id]
        except KeyError:
            raise UnknownEntityError(f"entity not in store: {entity_id}") from None

    def lookup_surface(self, surface: str, language: str) -> set[str]:
        """Ids of all entities whose label or alias matches the surface form."""
        if language not in self.languages:
            raise UnknownLanguageError(
                f"language {language!r} was not retained at ingest "
                f"(retained: {sorted(self.languages)})"
            )
        return set(self.surface_index[language].get(normalize_surface(surface), ()))

    def parents(self, entity_id: str) -> tuple[str, ...]:
        """Direct targets of the combined instance-of/subclass-of relation."""
        record = self.entities[entity_id]
        combined = list(record.instance_of)
        combined.extend(t for t in record.subclass_of if t not in record.instance_of)
        return tuple(combined)

    def ancestors(self, entity_id: str, max_depth: int) -> list[tuple[str, int]]:
        """Breadth-first closure over combined edges up to max_depth.

        Each reachable ancestor is reported once, at its minimum depth; the
        query entity itself is excluded and dangling targets are skipped.
        Cycles terminate because every node is visited at most once. Output
        is sorted by (depth, id) for determinism.
        """
        if max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if entity_id not in self.entities:
            raise UnknownEntityError(f"entity not in store: {entity_id}")
        visited = {entity_id}
        frontier = [entity_id]
        out: list[tuple[str, int]] = []
        for depth in range(1, max_depth + 1):
            next_frontier: list[str] = []
            for node in frontier:
                for parent in self.parents(node):
                    if parent in visited or parent not in self.entities:
                        continue
                    visited.add(parent)
                    next_frontier.append(parent)
                    out.append((parent, depth))
            if not next_frontier:
                break
            frontier = next_frontier
        out.sort(key=lambda item: (item[1], item[0]))
        return out

    def is_transitive_instance(
        self, entity_id: str, target_class: str, max_depth: int = 3
    ) -> bool:
        """True iff target_class appears among ancestors(entity, max_depth).

        Consistent with ancestors(): a dangling target (edge to an id absent
        from the store) is never reachable.
        """
        if entity_id not in self.entities:
            raise UnknownEntityError(f"entity not in store: {entity_id}")
        if target_class not in self.entities:
            return False
        visited = {entity_id}
        frontier = [entity_id]
        for _ in range(max_depth):
            next_frontier: list[str] = []
            for node in frontier:
                for parent in self.parents(node):
                    if parent not in visited and parent in self.entities:
                        if parent == target_class:
                            return True
                        visited.add(parent)
                        next_frontier.append(parent)
            if not next_frontier:
                return False
            frontier = next_frontier
        return False

    def language_counts(self) -> dict[str, int]:
        counts = {lang: 0 for lang in self.languages}
        for record in self.entities.values():
            for lang in self.languages:
                if record.has_language(lang):
                    counts[lang] += 1
        return counts

    # -- persistence ----------------------------------------------------

    def save(self, path: str | Path) -> None:
        payload = {
            "languages": sorted(self.languages),
            "disambiguation_class": self.disambiguation_class,
            "entities": {
                eid: {
                    "labels": record.labels,
                    "aliases": {k: list(v) for k, v in record.aliases.items()},
                    "descriptions": record.descriptions,
                    "instance_of": list(record.instance_of),
                    "subclass_of": list(record.subclass_of),
                    "disambiguation": record.is_disambiguation_page,
                }
                for eid, record in sorted(self.entities.items())
            },
        }
        write_snapshot(path, SNAPSHOT_KIND, payload)

    @classmethod
    def load(cls, path: str | Path) -> "KnowledgeGraphStore":
        payload = read_snapshot(path, SNAPSHOT_KIND)
        entities: dict[str, EntityRecord] = {}
        for eid, data in payload["entities"].items():
            entities[eid] = EntityRecord(
                id=eid,
                labels=data["labels"],
                aliases={k: tuple(v) for k, v in data["aliases"].items()},
                descriptions=data["descriptions"],
                instance_of=tuple(data["instance_of"]),
                subclass_of=tuple(data["subclass_of"]),
                is_disambiguation_page=data["disambiguation"],
            )
        return cls(
            entities,
            payload["languages"],
            disambiguation_class=payload["disambiguation_class"],
        )


def ingest_dump(
    source: Iterable[str],
    retained_languages: Iterable[str],
    entity_filter: Callable[[EntityRecord], bool] | None = None,
    disambiguation_class: str = DEFAULT_DISAMBIGUATION_CLASS,
) -> KnowledgeGraphStore:
    """Build a store from a line stream of entity documents.

    Malformed lines are counted and skipped; an unreadable stream is fatal.
    """
    languages = set(retained_languages)
    if not languages:
        raise ValueError("retained_languages must be non-empty")

    report = IngestReport()
    entities: dict[str, EntityRecord] = {}
    try:
        for lineno, payload in iter_dump_lines(source):
            report.lines_seen += 1
            try:
                record = parse_dump_line(payload, languages, disambiguation_class)
            except MalformedLine as exc:
                report.add_warning(lineno, str(exc))
                continue
            if entity_filter is not None and not entity_filter(record):
                report.skipped_by_filter += 1
                continue
            if record.id not in entities:
                report.kept += 1
            entities[record.id] = record
    except (OSError, UnicodeDecodeError) as exc:
        raise DumpError(f"dump stream unreadable: {exc}") from exc

    store = KnowledgeGraphStore(
        entities, languages, disambiguation_class=disambiguation_class, report=report
    )
    report.language_counts = store.language_counts()
    return store
