"""Ground-truth and detection serialization.

Two formats are supported side by side:

* the PAN competition XML layout, one file per suspicious document with
  ``<feature name="plagiarism" .../>`` (ground truth) or
  ``<feature name="detected-plagiarism" .../>`` (detections), addressed by
  character offset and length on both sides;
* a flat native TSV with one aligned passage pair per line.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Sequence

from .merge import Detection, Span
from .metrics import OBFUSCATION_LABELS, PlagiarismCase

CASE_FEATURE = "plagiarism"
DETECTION_FEATURE = "detected-plagiarism"


def _parse_features(path: Path, feature_name: str) -> list[dict]:
    tree = ET.parse(path)
    root = tree.getroot()
    reference = root.get("reference")
    if reference is None:
        raise ValueError(f"{path}: document element lacks a reference attribute")
    rows = []
    for node in root.iter("feature"):
        if node.get("name") != feature_name:
            continue
        row = {
            "suspicious_doc": reference,
            "this_offset": int(node.get("this_offset")),
            "this_length": int(node.get("this_length")),
            "source_doc": node.get("source_reference"),
            "source_offset": int(node.get("source_offset")),
            "source_length": int(node.get("source_length")),
            "obfuscation": node.get("obfuscation"),
            "score": node.get("score"),
        }
        rows.append(row)
    return rows


def _xml_paths(path: str | Path) -> list[Path]:
    p = Path(path)
    if p.is_dir():
        return sorted(p.glob("*.xml"))
    return [p]


def read_cases_xml(path: str | Path) -> list[PlagiarismCase]:
    """Read ground-truth cases from one XML file or a directory of them."""
    cases = []
    for xml_path in _xml_paths(path):
        for row in _parse_features(xml_path, CASE_FEATURE):
            obfuscation = row["obfuscation"]
            if obfuscation is not None and obfuscation not in OBFUSCATION_LABELS:
                raise ValueError(
                    f"{xml_path}: unknown obfuscation label {obfuscation!r}"
                )
            cases.append(
                PlagiarismCase(
                    suspicious=Span(
                        row["suspicious_doc"], row["this_offset"], row["this_length"]
                    ),
                    source=Span(
                        row["source_doc"], row["source_offset"], row["source_length"]
                    ),
                    obfuscation=obfuscation,
                )
            )
    return cases


def read_detections_xml(path: str | Path) -> list[Detection]:
    detections = []
    for xml_path in _xml_paths(path):
        for row in _parse_features(xml_path, DETECTION_FEATURE):
            detections.append(
                Detection(
                    suspicious=Span(
                        row["suspicious_doc"], row["this_offset"], row["this_length"]
                    ),
                    source=Span(
                        row["source_doc"], row["source_offset"], row["source_length"]
                    ),
                    score=float(row.get("score") or 0.0),
                )
            )
    return detections


def write_detections_xml(detections: Sequence[Detection], out_dir: str | Path) -> list[Path]:
    """One XML file per suspicious document, deterministic order and bytes."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    by_doc: dict[str, list[Detection]] = {}
    for det in detections:
        by_doc.setdefault(det.suspicious.doc_id, []).append(det)

    written = []
    for doc_id in sorted(by_doc):
        root = ET.Element("document", {"reference": doc_id})
        rows = sorted(
            by_doc[doc_id],
            key=lambda d: (d.suspicious.offset, d.source.doc_id, d.source.offset),
        )
        for det in rows:
            ET.SubElement(
                root,
                "feature",
                {
                    "name": DETECTION_FEATURE,
                    "this_offset": str(det.suspicious.offset),
                    "this_length": str(det.suspicious.length),
                    "source_reference": det.source.doc_id,
                    "source_offset": str(det.source.offset),
                    "source_length": str(det.source.length),
                    "score": f"{det.score:.10g}",
                },
            )
        tree = ET.ElementTree(root)
        ET.indent(tree, space="  ")
        path = out / f"{_safe_name(doc_id)}.xml"
        tree.write(path, encoding="utf-8", xml_declaration=True)
        written.append(path)
    return written


def _safe_name(doc_id: str) -> str:
    return "".join(c if c.isalnum() or c in "-._" else "_" for c in doc_id)


# ---------------------------------------------------------------------------
# native TSV
# ---------------------------------------------------------------------------


def _read_tsv_rows(path: str | Path, n_fields: int) -> Iterable[list[str]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != n_fields:
                raise ValueError(
                    f"{path}:{lineno}: expected {n_fields} tab-separated fields"
                )
            yield parts


def read_cases_tsv(path: str | Path) -> list[PlagiarismCase]:
    """Columns: suspicious_doc, offset, length, source_doc, offset, length,
    obfuscation (automatic|manual|none)."""
    cases = []
    for parts in _read_tsv_rows(path, 7):
        obfuscation = parts[6]
        if obfuscation not in OBFUSCATION_LABELS:
            raise ValueError(f"{path}: unknown obfuscation label {obfuscation!r}")
        cases.append(
            PlagiarismCase(
                suspicious=Span(parts[0], int(parts[1]), int(parts[2])),
                source=Span(parts[3], int(parts[4]), int(parts[5])),
                obfuscation=obfuscation,
            )
        )
    return cases


def write_detections_tsv(detections: Sequence[Detection], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for det in detections:
            fh.write(
                "\t".join(
                    (
                        det.suspicious.doc_id,
                        str(det.suspicious.offset),
                        str(det.suspicious.length),
                        det.source.doc_id,
                        str(det.source.offset),
                        str(det.source.length),
                        f"{det.score:.10g}",
                    )
                )
                + "\n"
            )


def read_detections_tsv(path: str | Path) -> list[Detection]:
    detections = []
    for parts in _read_tsv_rows(path, 7):
        detections.append(
            Detection(
                suspicious=Span(parts[0], int(parts[1]), int(parts[2])),
                source=Span(parts[3], int(parts[4]), int(parts[5])),
                score=float(parts[6]),
            )
        )
    return detections


def read_cases(path: str | Path) -> list[PlagiarismCase]:
    """Dispatch on suffix/dir: XML ground truth or native TSV."""
    p = Path(path)
    if p.is_dir() or p.suffix.lower() == ".xml":
        return read_cases_xml(p)
    return read_cases_tsv(p)
