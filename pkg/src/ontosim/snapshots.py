"""Versioned binary snapshot files.

All persisted artifacts (knowledge-graph stores, vector collections, topic
models, language profiles) share one container format: a fixed magic string,
a format version, a kind tag identifying the payload schema, then the payload
as gzip-compressed canonical JSON. Compression uses mtime=0 and the JSON is
key-sorted, so identical payloads serialize to identical bytes.
"""

from __future__ import annotations

import gzip
import json
import struct
from pathlib import Path
from typing import Any

MAGIC = b"ONTOSNAP"
FORMAT_VERSION = 1


class SnapshotError(Exception):
    """Snapshot file is missing, corrupt, or of the wrong kind/version."""


def canonical_json(payload: Any) -> bytes:
    return json.dumps(
        payload, sort_keys=True, ensure_ascii=False, separators=(",", ":")
    ).encode("utf-8")


def write_snapshot(path: str | Path, kind: str, payload: Any) -> None:
    """Write payload under the given kind tag; overwrites existing files."""
    kind_bytes = kind.encode("ascii")
    if len(kind_bytes) > 255:
        raise ValueError("snapshot kind too long")
    body = gzip.compress(canonical_json(payload), mtime=0)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack(">HB", FORMAT_VERSION, len(kind_bytes)))
        fh.write(kind_bytes)
        fh.write(body)


def read_snapshot(path: str | Path, kind: str) -> Any:
    """Read a snapshot, validating magic, version, and kind tag."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SnapshotError(f"cannot read snapshot {path}: {exc}") from exc
    if len(raw) < len(MAGIC) + 3 or not raw.startswith(MAGIC):
        raise SnapshotError(f"{path}: not a snapshot file")
    offset = len(MAGIC)
    version, kind_len = struct.unpack_from(">HB", raw, offset)
    offset += 3
    if version != FORMAT_VERSION:
        raise SnapshotError(f"{path}: unsupported snapshot version {version}")
    found_kind = raw[offset : offset + kind_len].decode("ascii")
    offset += kind_len
    if found_kind != kind:
        raise SnapshotError(f"{path}: expected kind {kind!r}, found {found_kind!r}")
    try:
        return json.loads(gzip.decompress(raw[offset:]).decode("utf-8"))
    except (OSError, ValueError) as exc:
        raise SnapshotError(f"{path}: corrupt payload: {exc}") from exc
