"""Streaming parser for newline-delimited Wikidata entity dumps.

Official dumps wrap one JSON entity object per line in a giant array, so a
line may carry a trailing comma and the stream may contain bare ``[`` / ``]``
lines; both are tolerated, as are blank lines. A malformed line is reported
to the caller and never aborts the stream.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

ENTITY_ID_RE = re.compile(r"^[QP][0-9]+$")

# Default id of the class whose instances are disambiguation pages in the
# real Wikidata ontology. Fixture graphs override it via configuration.
DEFAULT_DISAMBIGUATION_CLASS = "Q4167410"


def is_entity_id(value: object) -> bool:
    return isinstance(value, str) and bool(ENTITY_ID_RE.match(value))


@dataclass(frozen=True)
class EntityRecord:
    """One knowledge-graph entity restricted to the retained languages.

    ``instance_of`` / ``subclass_of`` hold the P31 / P279 edge targets in dump
    order, de-duplicated and with self-loops dropped. Targets may reference
    entities absent from the enclosing store (dangling edges).
    """

    id: str
    labels: dict[str, str] = field(default_factory=dict)
    aliases: dict[str, tuple[str, ...]] = field(default_factory=dict)
    descriptions: dict[str, str] = field(default_factory=dict)
    instance_of: tuple[str, ...] = ()
    subclass_of: tuple[str, ...] = ()
    is_disambiguation_page: bool = False

    def surfaces(self, language: str) -> Iterator[str]:
        """All label/alias surface forms of this entity in one language."""
        label = self.labels.get(language)
        if label is not None:
            yield label
        yield from self.aliases.get(language, ())

    def has_language(self, language: str) -> bool:
        return language in self.labels or language in self.aliases


class MalformedLine(ValueError):
    """A single dump line that could not be parsed into an entity."""


def _claim_targets(claims: object, prop: str) -> tuple[str, ...]:
    """Extract item-id targets of one property, skipping valueless snaks."""
    if not isinstance(claims, dict):
        return ()
    targets: list[str] = []
    seen: set[str] = set()
    for statement in claims.get(prop, ()) or ():
        if not isinstance(statement, dict):
            continue
        snak = statement.get("mainsnak", {})
        value = snak.get("datavalue", {}).get("value") if isinstance(snak, dict) else None
        target = value.get("id") if isinstance(value, dict) else None
        if is_entity_id(target) and target not in seen:
            seen.add(target)
            targets.append(target)
    return tuple(targets)


def parse_entity(
    obj: dict,
    retained_languages: set[str],
    disambiguation_class: str = DEFAULT_DISAMBIGUATION_CLASS,
) -> EntityRecord:
    """Convert one dump object into an EntityRecord.

    Raises MalformedLine when the object lacks a valid entity id.
    """
    entity_id = obj.get("id")
    if not is_entity_id(entity_id):
        raise MalformedLine(f"missing or invalid entity id: {entity_id!r}")

    labels: dict[str, str] = {}
    for lang, entry in (obj.get("labels") or {}).items():
        if lang in retained_languages and isinstance(entry, dict):
            value = entry.get("value")
            if isinstance(value, str) and value:
                labels[lang] = value

    aliases: dict[str, tuple[str, ...]] = {}
    for lang, entries in (obj.get("aliases") or {}).items():
        if lang not in retained_languages or not isinstance(entries, list):
            continue
        values: list[str] = []
        for entry in entries:
            if isinstance(entry, dict):
                value = entry.get("value")
                if isinstance(value, str) and value and value not in values:
                    values.append(value)
        if values:
            aliases[lang] = tuple(values)

    descriptions: dict[str, str] = {}
    for lang, entry in (obj.get("descriptions") or {}).items():
        if lang in retained_languages and isinstance(entry, dict):
            value = entry.get("value")
            if isinstance(value, str) and value:
                descriptions[lang] = value

    claims = obj.get("claims")
    instance_of = _claim_targets(claims, "P31")
    subclass_of = _claim_targets(claims, "P279")

    return EntityRecord(
        id=entity_id,
        labels=labels,
        aliases=aliases,
        descriptions=descriptions,
        instance_of=tuple(t for t in instance_of if t != entity_id),
        subclass_of=tuple(t for t in subclass_of if t != entity_id),
        is_disambiguation_page=disambiguation_class in instance_of,
    )


def iter_dump_lines(
    source: Iterable[str],
) -> Iterator[tuple[int, str]]:
    """Yield (line number, payload) for lines that carry an entity object.

    Array brackets, blank lines, and trailing commas from the official dump
    layout are stripped here so callers only see candidate JSON objects.
    """
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped in ("[", "]"):
            continue
        if stripped.endswith(","):
            stripped = stripped[:-1].rstrip()
        if not stripped:
            continue
        yield lineno, stripped


def parse_dump_line(
    payload: str,
    retained_languages: set[str],
    disambiguation_class: str = DEFAULT_DISAMBIGUATION_CLASS,
) -> EntityRecord:
    """Parse one payload string (no brackets/commas) into an EntityRecord."""
    try:
        obj = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise MalformedLine(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedLine("line is valid JSON but not an object")
    return parse_entity(obj, retained_languages, disambiguation_class)
