from .dump import DEFAULT_DISAMBIGUATION_CLASS, EntityRecord, is_entity_id
from .store import IngestReport, KnowledgeGraphStore, ingest_dump, normalize_surface
from .subset import descendants, filter_dump_lines

__all__ = [
    "DEFAULT_DISAMBIGUATION_CLASS",
    "EntityRecord",
    "IngestReport",
    "KnowledgeGraphStore",
    "descendants",
    "filter_dump_lines",
    "ingest_dump",
    "is_entity_id",
    "normalize_surface",
]
