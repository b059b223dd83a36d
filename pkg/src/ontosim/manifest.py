"""Corpus manifests: TSV listings of documents plus retrieval ground truth."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class ManifestEntry:
    doc_id: str
    path: Path
    language: str | None = None


@dataclass
class CorpusManifest:
    name: str
    entries: list[ManifestEntry]

    def doc_ids(self) -> list[str]:
        return [entry.doc_id for entry in self.entries]

    def read_text(self, doc_id: str) -> str:
        for entry in self.entries:
            if entry.doc_id == doc_id:
                return entry.path.read_text(encoding="utf-8")
        raise KeyError(f"doc_id not in manifest: {doc_id}")

    def __len__(self) -> int:
        return len(self.entries)


def load_manifest(path: str | Path) -> CorpusManifest:
    """Read a manifest TSV: doc_id, relative path, optional language.

    Paths resolve relative to the manifest's own directory; every referenced
    file must exist at load time and doc ids must be unique.
    """
    manifest_path = Path(path)
    base = manifest_path.parent
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    with open(manifest_path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise ValueError(
                    f"{manifest_path}:{lineno}: expected 2 or 3 tab-separated fields"
                )
            doc_id, rel_path = parts[0], parts[1]
            language = parts[2] if len(parts) == 3 and parts[2] else None
            if doc_id in seen:
                raise ValueError(f"{manifest_path}:{lineno}: duplicate doc_id {doc_id!r}")
            seen.add(doc_id)
            doc_path = (base / rel_path).resolve()
            if not doc_path.is_file():
                raise FileNotFoundError(
                    f"{manifest_path}:{lineno}: document file missing: {doc_path}"
                )
            entries.append(ManifestEntry(doc_id=doc_id, path=doc_path, language=language))
    return CorpusManifest(name=manifest_path.stem, entries=entries)


def write_manifest(manifest: CorpusManifest, path: str | Path) -> None:
    out = Path(path)
    base = out.parent.resolve()
    with open(out, "w", encoding="utf-8") as fh:
        for entry in manifest.entries:
            try:
                rel = entry.path.resolve().relative_to(base)
            except ValueError:
                rel = entry.path.resolve()
            if entry.language:
                fh.write(f"{entry.doc_id}\t{rel}\t{entry.language}\n")
            else:
                fh.write(f"{entry.doc_id}\t{rel}\n")


def sample_manifest(
    manifest: CorpusManifest, n: int, seed: int
) -> CorpusManifest:
    """Seeded random sample of n entries, in stable (sorted) order."""
    if n > len(manifest.entries):
        raise ValueError(f"cannot sample {n} of {len(manifest.entries)} documents")
    rng = random.Random(seed)
    picked = rng.sample(manifest.entries, n)
    picked.sort(key=lambda e: e.doc_id)
    return CorpusManifest(name=f"{manifest.name}-sample{n}", entries=picked)


def load_retrieval_truth(path: str | Path) -> dict[str, set[str]]:
    """TSV of query doc_id, relevant doc_id; repeated query lines accumulate."""
    truth: dict[str, set[str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 tab-separated fields")
            truth.setdefault(parts[0], set()).add(parts[1])
    return truth
