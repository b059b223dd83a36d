"""Extract subset dumps: by explicit id list or by class-closure query.

The output is the same newline-delimited format the ingester reads (one JSON
object per line, no array brackets). Original line payloads are passed
through untouched so a subset can later be re-ingested with a wider filter.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .dump import MalformedLine, iter_dump_lines, parse_dump_line
from .store import KnowledgeGraphStore


def descendants(
    store: KnowledgeGraphStore, class_id: str, max_depth: int | None = None
) -> set[str]:
    """Ids transitively under class_id via combined edges, plus the class itself.

    max_depth None means the full transitive closure; traversal visits each
    node once, so cycles terminate.
    """
    reverse: dict[str, list[str]] = {}
    for record in store.entities.values():
        for parent in store.parents(record.id):
            reverse.setdefault(parent, []).append(record.id)

    found: set[str] = set()
    if class_id in store:
        found.add(class_id)
    frontier = [class_id]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        depth += 1
        next_frontier: list[str] = []
        for node in frontier:
            for child in reverse.get(node, ()):
                if child not in found:
                    found.add(child)
                    next_frontier.append(child)
        frontier = next_frontier
    return found


def filter_dump_lines(
    source: Iterable[str], keep_ids: set[str]
) -> Iterator[str]:
    """Yield the payloads of dump lines whose entity id is in keep_ids."""
    for _, payload in iter_dump_lines(source):
        try:
            record = parse_dump_line(payload, retained_languages=set())
        except MalformedLine:
            continue
        if record.id in keep_ids:
            yield payload
