"""Command-line pipeline: build a knowledge-graph store, vectorize corpora,
rank reference collections, align passages, tune thresholds, and score runs.

Every stage writes its delimited outputs plus a text report and a JSON
summary embedding the resolved configuration; ranking, alignment, and tuning
stages additionally render figures. Identical inputs and configuration
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import bz2
import gzip
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .alignment import (
    Fragment,
    FragmentPair,
    breakdown_metrics,
    fragment_document,
    merge_and_classify,
    read_cases,
    read_detections_tsv,
    read_detections_xml,
    retrieve_fragment_matches,
    score_detections,
    tune_thresholds,
    write_detections_tsv,
    write_detections_xml,
)
from .config import RunConfig
from .errors import OntosimError
from .kg import KnowledgeGraphStore, descendants, filter_dump_lines, ingest_dump
from .linking import LinkerConfig, LinkerStats, link
from .manifest import (
    CorpusManifest,
    load_manifest,
    load_retrieval_truth,
    sample_manifest,
    write_manifest,
)
from .report import (
    metric_lines,
    plot_plagdet_bars,
    plot_recall_curve,
    plot_tuning_grid,
    write_json_summary,
    write_text_report,
)
from .retrieval import (
    export_rankings_tsv,
    rank_collection,
    ranking_metrics,
    read_rankings_tsv,
)
from .text import (
    LanguageProfiles,
    PreprocessedDocument,
    TopicModel,
    langid_samples,
    load_analyzers,
    preprocess,
    train_profiles,
    train_topic_model,
)
from .text.topic import packaged_training_corpus
from .text.types import Topic
from .vectors import EntityVector, build_vector, export_vectors_tsv, load_vectors, save_vectors

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 3


def open_dump(path: str | Path):
    """Open a dump file as a text stream; .gz and .bz2 are transparent."""
    name = str(path)
    if name.endswith(".gz"):
        return gzip.open(name, "rt", encoding="utf-8")
    if name.endswith(".bz2"):
        return bz2.open(name, "rt", encoding="utf-8")
    return open(name, "r", encoding="utf-8")


@dataclass
class Runtime:
    """Loaded models shared by the pipeline stages."""

    config: RunConfig
    analyzers: dict
    profiles: LanguageProfiles
    topic_model: TopicModel
    linker_config: LinkerConfig


def _load_runtime(config: RunConfig, topic_model_path: str | None) -> Runtime:
    analyzers = load_analyzers(config.require("languages"), config.get("analyzer_dir"))
    profiles = train_profiles(
        langid_samples(analyzers), max_entries=config.get("langid.max_entries", 10000)
    )
    if topic_model_path:
        topic_model = TopicModel.load(topic_model_path)
    else:
        topic_model = train_topic_model(packaged_training_corpus())
    linker_config = LinkerConfig(
        max_ngram=config.get("linker.max_ngram", 3),
        ancestor_depth=config.get("linker.ancestor_depth", 3),
        topic_filter_depth=config.get("linker.topic_filter_depth", 3),
        context_window=config.get("linker.context_window", 2),
        no_space_languages=frozenset(config.get("linker.no_space_languages", ["ja", "zh"])),
        class_ids=dict(config.get("linker.classes", {})),
        stopwords={lang: a.data.stopwords for lang, a in analyzers.items()},
    )
    return Runtime(
        config=config,
        analyzers=analyzers,
        profiles=profiles,
        topic_model=topic_model,
        linker_config=linker_config,
    )


def _preprocess_entry(runtime: Runtime, doc_id: str, path: Path, language: str | None):
    text = path.read_text(encoding="utf-8")
    return preprocess(
        doc_id,
        text,
        analyzers=runtime.analyzers,
        topic_model=runtime.topic_model,
        profiles=runtime.profiles,
        language=language,
        detector_floor=runtime.config.get("langid.floor", 0.3),
    ), text


def _preprocess_manifest(
    runtime: Runtime, manifest: CorpusManifest
) -> tuple[dict[str, tuple[PreprocessedDocument, str]], list[tuple[str, str]]]:
    """Preprocess all documents; a failing document never aborts the batch."""
    workers = max(1, int(runtime.config.get("workers", 1)))

    def job(entry):
        try:
            return entry.doc_id, _preprocess_entry(
                runtime, entry.doc_id, entry.path, entry.language
            ), None
        except Exception as exc:  # noqa: BLE001 - crash isolation per document
            return entry.doc_id, None, f"{type(exc).__name__}: {exc}"

    if workers == 1:
        results = [job(entry) for entry in manifest.entries]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, manifest.entries))

    docs: dict[str, tuple[PreprocessedDocument, str]] = {}
    failures: list[tuple[str, str]] = []
    for doc_id, payload, error in sorted(results, key=lambda r: r[0]):
        if error is None:
            docs[doc_id] = payload
        else:
            print(f"warning: {doc_id}: {error}", file=sys.stderr)
            failures.append((doc_id, error))
    return docs, failures


def _write_failure_lines(failures: list[tuple[str, str]]) -> list[str]:
    if not failures:
        return ["none"]
    return [f"{doc_id}: {message}" for doc_id, message in failures]


# ---------------------------------------------------------------------------
# kg-build / kg-filter
# ---------------------------------------------------------------------------


def cmd_kg_build(args) -> int:
    config = RunConfig.load(args.config, args.set)
    languages = (
        [v for v in args.languages.split(",") if v]
        if args.languages
        else config.require("languages")
    )
    entity_filter = None
    if args.ids_file:
        keep = {
            line.strip()
            for line in Path(args.ids_file).read_text(encoding="utf-8").splitlines()
            if line.strip()
        }
        entity_filter = lambda record: record.id in keep  # noqa: E731
    with open_dump(args.dump) as fh:
        store = ingest_dump(
            fh,
            languages,
            entity_filter=entity_filter,
            disambiguation_class=config.get("kg.disambiguation_class", "Q4167410"),
        )
    store.save(args.out)
    report_path = args.report or f"{args.out}.report.txt"
    Path(report_path).write_text(store.report.as_text(), encoding="utf-8")
    print(f"kept {store.report.kept} entities -> {args.out}")
    if args.fail_on_empty and len(store) == 0:
        print("error: store is empty", file=sys.stderr)
        return EXIT_FATAL
    return EXIT_OK


def cmd_kg_filter(args) -> int:
    keep: set[str] = set()
    if args.ids_file:
        keep.update(
            line.strip()
            for line in Path(args.ids_file).read_text(encoding="utf-8").splitlines()
            if line.strip()
        )
    if args.klass:
        with open_dump(args.dump) as fh:
            store = ingest_dump(fh, ["en"])
        max_depth = args.max_depth if args.max_depth > 0 else None
        for class_id in args.klass:
            keep.update(descendants(store, class_id, max_depth))
    if not keep:
        print("error: no ids to keep (need --ids-file and/or --class)", file=sys.stderr)
        return EXIT_FATAL
    written = 0
    with open_dump(args.dump) as fh, open(args.out, "w", encoding="utf-8") as out:
        for payload in filter_dump_lines(fh, keep):
            out.write(payload + "\n")
            written += 1
    print(f"wrote {written} entities -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# train-topics
# ---------------------------------------------------------------------------


def cmd_train_topics(args) -> int:
    if args.train:
        rows = []
        for lineno, line in enumerate(
            Path(args.train).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" not in line:
                print(f"error: {args.train}:{lineno}: expected topic<TAB>text", file=sys.stderr)
                return EXIT_FATAL
            topic, text = line.split("\t", 1)
            rows.append((text, Topic(topic)))
    else:
        rows = packaged_training_corpus()
    model = train_topic_model(rows)
    model.save(args.out)
    if args.export:
        model.export_text(args.export)
    print(f"trained topic model on {len(rows)} documents -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# vectorize
# ---------------------------------------------------------------------------


def cmd_vectorize(args) -> int:
    config = RunConfig.load(args.config, args.set)
    if args.workers:
        config.tree["workers"] = args.workers
    runtime = _load_runtime(config, args.topic_model)
    store = KnowledgeGraphStore.load(args.kg)
    manifest = load_manifest(args.manifest)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    docs, failures = _preprocess_manifest(runtime, manifest)
    vectors: dict[str, EntityVector] = {}
    stats_rows: dict[str, dict[str, int]] = {}
    for doc_id, (doc, _text) in docs.items():
        try:
            stats = LinkerStats()
            bag = link(doc, store, runtime.linker_config, stats=stats)
            vectors[doc_id] = build_vector(
                bag, store, max_depth=config.get("vectors.max_depth", 3), doc_id=doc_id
            )
            stats_rows[doc_id] = stats.as_dict()
        except Exception as exc:  # noqa: BLE001 - crash isolation per document
            print(f"warning: {doc_id}: {exc}", file=sys.stderr)
            failures.append((doc_id, f"{type(exc).__name__}: {exc}"))
    failures.sort()

    save_vectors(vectors, out_dir / "vectors.snap")
    export_vectors_tsv(vectors, out_dir / "vectors.tsv")

    stats_lines = [
        f"{doc_id}\t" + "\t".join(f"{k}={v}" for k, v in sorted(row.items()))
        for doc_id, row in sorted(stats_rows.items())
    ]
    write_text_report(
        out_dir / "vectorize.report.txt",
        "vectorize report",
        [
            (
                "summary",
                [
                    f"documents vectorized: {len(vectors)}",
                    f"documents failed:     {len(failures)}",
                ],
            ),
            ("per-document linker statistics", stats_lines or ["none"]),
            ("failures", _write_failure_lines(failures)),
        ],
        config.as_dict(),
    )
    write_json_summary(
        out_dir / "vectorize.json",
        {
            "inputs": {"manifest": str(args.manifest), "kg": str(args.kg)},
            "vectorized": sorted(vectors),
            "failures": [{"doc_id": d, "error": e} for d, e in failures],
            "linker_stats": stats_rows,
        },
        config.as_dict(),
    )
    print(f"vectorized {len(vectors)} documents -> {out_dir}")
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# retrieve
# ---------------------------------------------------------------------------


def cmd_retrieve(args) -> int:
    config = RunConfig.load(args.config, args.set)
    queries = load_vectors(args.queries)
    references = load_vectors(args.references)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    collection = [references[doc_id] for doc_id in sorted(references)]
    top_k = config.get("retrieval.top_k")
    rankings = [
        rank_collection(queries[doc_id], collection, top_k=top_k)
        for doc_id in sorted(queries)
    ]
    export_rankings_tsv(rankings, out_dir / "rankings.tsv")

    sections = [
        (
            "summary",
            [
                f"queries:    {len(rankings)}",
                f"references: {len(collection)}",
            ],
        )
    ]
    payload: dict = {
        "inputs": {"queries": str(args.queries), "references": str(args.references)},
        "queries": len(rankings),
        "references": len(collection),
    }
    if args.truth:
        truth = load_retrieval_truth(args.truth)
        metrics = ranking_metrics(
            rankings,
            truth,
            ks=config.get("retrieval.metric_ks", [1, 5, 10, 50]),
            arr_max_k=config.get("retrieval.arr_max_k", 50),
        )
        values = {f"r@{k}": v for k, v in sorted(metrics.r_at_k.items())}
        values["arr"] = metrics.arr
        values["mrr"] = metrics.mrr
        sections.append(("ranking quality", metric_lines(values)))
        payload["metrics"] = {
            "r_at_k": [[k, v] for k, v in sorted(metrics.r_at_k.items())],
            "arr": metrics.arr,
            "mrr": metrics.mrr,
        }
        plot_recall_curve(out_dir / "r_at_k.png", metrics.r_at_k, metrics.arr, metrics.mrr)
    else:
        sections.append(("ranking quality", ["skipped: no ground truth given"]))

    write_text_report(out_dir / "retrieve.report.txt", "retrieval report", sections, config.as_dict())
    write_json_summary(out_dir / "retrieve.json", payload, config.as_dict())
    print(f"ranked {len(rankings)} queries -> {out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# align / tune
# ---------------------------------------------------------------------------


def _fragment_manifest(
    runtime: Runtime,
    store: KnowledgeGraphStore,
    manifest: CorpusManifest,
) -> tuple[list[Fragment], list[tuple[str, str]]]:
    config = runtime.config
    docs, failures = _preprocess_manifest(runtime, manifest)
    fragments: list[Fragment] = []
    for doc_id, (doc, _text) in docs.items():
        try:
            fragments.extend(
                fragment_document(
                    doc,
                    store,
                    runtime.linker_config,
                    window=config.get("alignment.window", 6),
                    step=config.get("alignment.step", 3),
                    max_depth=config.get("vectors.max_depth", 3),
                )
            )
        except Exception as exc:  # noqa: BLE001 - crash isolation per document
            failures.append((doc_id, f"{type(exc).__name__}: {exc}"))
    failures.sort()
    return fragments, failures


def _collect_pairs(
    runtime: Runtime,
    suspicious_fragments: list[Fragment],
    source_fragments: list[Fragment],
) -> list[FragmentPair]:
    k = runtime.config.get("alignment.fragment_top_k", 5)
    pairs: list[FragmentPair] = []
    for query in suspicious_fragments:
        pairs.extend(retrieve_fragment_matches(query, source_fragments, k=k))
    return pairs


def _alignment_inputs(args, config: RunConfig):
    runtime = _load_runtime(config, args.topic_model)
    store = KnowledgeGraphStore.load(args.kg)
    suspicious = load_manifest(args.suspicious)
    sources = load_manifest(args.sources)
    susp_fragments, susp_failures = _fragment_manifest(runtime, store, suspicious)
    src_fragments, src_failures = _fragment_manifest(runtime, store, sources)
    pairs = _collect_pairs(runtime, susp_fragments, src_fragments)
    return pairs, susp_failures + src_failures


def cmd_align(args) -> int:
    config = RunConfig.load(args.config, args.set)
    if args.workers:
        config.tree["workers"] = args.workers
    for flag, key in (
        ("window", "alignment.window"),
        ("step", "alignment.step"),
        ("top_k", "alignment.fragment_top_k"),
        ("char_threshold", "alignment.char_distance_threshold"),
        ("score_threshold", "alignment.score_threshold"),
        ("merge_rule", "alignment.merge_rule"),
    ):
        value = getattr(args, flag)
        if value is not None:
            config.apply_override(f"{key}={value}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    pairs, failures = _alignment_inputs(args, config)
    detections = merge_and_classify(
        pairs,
        config.get("alignment.char_distance_threshold", 1200),
        config.get("alignment.score_threshold", 0.45),
        merge_rule=config.get("alignment.merge_rule", "both"),
    )
    write_detections_tsv(detections, out_dir / "detections.tsv")
    write_detections_xml(detections, out_dir / "detections-xml")

    sections = [
        (
            "summary",
            [
                f"fragment pairs:  {len(pairs)}",
                f"detections:      {len(detections)}",
            ],
        ),
        ("failures", _write_failure_lines(failures)),
    ]
    payload: dict = {
        "inputs": {
            "suspicious": str(args.suspicious),
            "sources": str(args.sources),
            "kg": str(args.kg),
        },
        "fragment_pairs": len(pairs),
        "detections": len(detections),
        "failures": [{"doc_id": d, "error": e} for d, e in failures],
    }
    if args.truth:
        cases = read_cases(args.truth)
        bounds = tuple(config.get("alignment.length_bounds", [300, 1000]))
        overall = score_detections(detections, cases)
        by_length = breakdown_metrics(detections, cases, "length", bounds)
        payload["metrics"] = overall.as_dict()
        payload["by_length"] = {
            facet: m.as_dict() for facet, m in by_length.per_facet.items()
        }
        payload["unmatched_detections"] = by_length.unmatched_detections
        sections.append(
            ("character-level quality", metric_lines(overall.as_dict()))
        )
        groups = {"overall": {**overall.as_dict(), "f1": overall.f1}}
        for facet, m in by_length.per_facet.items():
            groups[f"len:{facet}"] = {**m.as_dict(), "f1": m.f1}
            sections.append(
                (f"length class {facet}", metric_lines(m.as_dict()))
            )
        labeled = all(c.obfuscation is not None for c in cases)
        if cases and labeled:
            by_obf = breakdown_metrics(detections, cases, "obfuscation", bounds)
            payload["by_obfuscation"] = {
                facet: m.as_dict() for facet, m in by_obf.per_facet.items()
            }
            for facet, m in by_obf.per_facet.items():
                groups[f"obf:{facet}"] = {**m.as_dict(), "f1": m.f1}
                sections.append(
                    (f"obfuscation {facet}", metric_lines(m.as_dict()))
                )
        plot_plagdet_bars(out_dir / "plagdet.png", groups)
    else:
        sections.append(("character-level quality", ["skipped: no ground truth given"]))

    write_text_report(out_dir / "align.report.txt", "alignment report", sections, config.as_dict())
    write_json_summary(out_dir / "align.json", payload, config.as_dict())
    print(f"{len(detections)} detections -> {out_dir}")
    return EXIT_PARTIAL if failures else EXIT_OK


def cmd_tune(args) -> int:
    config = RunConfig.load(args.config, args.set)
    if args.workers:
        config.tree["workers"] = args.workers
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.char_grid:
        config.apply_override(f"tuning.char_grid=[{args.char_grid}]")
    if args.score_grid:
        config.apply_override(f"tuning.score_grid=[{args.score_grid}]")

    char_grid = config.get("tuning.char_grid")
    score_grid = config.get("tuning.score_grid")
    if not char_grid or not score_grid:
        print("error: tuning grid is empty", file=sys.stderr)
        return EXIT_FATAL

    pairs, failures = _alignment_inputs(args, config)
    cases = read_cases(args.truth)
    result = tune_thresholds(
        pairs,
        cases,
        char_grid=char_grid,
        score_grid=score_grid,
        merge_rule=config.get("alignment.merge_rule", "both"),
    )

    with open(out_dir / "grid.tsv", "w", encoding="utf-8") as fh:
        for point in result.table:
            fh.write(
                f"{point.char_distance_threshold}\t{point.score_threshold:.10g}"
                f"\t{point.metrics_plagdet:.10g}\t{point.detections}\n"
            )
    chars = sorted(set(char_grid))
    scores = sorted(set(score_grid))
    q_matrix = [
        [
            next(
                p.metrics_plagdet
                for p in result.table
                if p.char_distance_threshold == c and p.score_threshold == s
            )
            for c in chars
        ]
        for s in scores
    ]
    plot_tuning_grid(out_dir / "tuning_grid.png", chars, scores, q_matrix)
    payload = {
        "best": {
            "char_distance_threshold": result.best_char_distance,
            "score_threshold": result.best_score_threshold,
            "plagdet": result.best_plagdet,
        },
        "grid": [
            {
                "char_distance_threshold": p.char_distance_threshold,
                "score_threshold": p.score_threshold,
                "plagdet": p.metrics_plagdet,
                "detections": p.detections,
            }
            for p in result.table
        ],
        "failures": [{"doc_id": d, "error": e} for d, e in failures],
    }
    write_json_summary(out_dir / "tuning.json", payload, config.as_dict())
    write_text_report(
        out_dir / "tune.report.txt",
        "threshold tuning report",
        [
            (
                "best thresholds",
                [
                    f"char distance threshold: {result.best_char_distance}",
                    f"score threshold:         {result.best_score_threshold:g}",
                    f"plagdet:                 {result.best_plagdet:.6f}",
                ],
            ),
            ("failures", _write_failure_lines(failures)),
        ],
        config.as_dict(),
    )
    print(
        f"best thresholds: distance {result.best_char_distance}, "
        f"score {result.best_score_threshold:g} (plagdet {result.best_plagdet:.4f})"
    )
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# evaluate / sample
# ---------------------------------------------------------------------------


def cmd_evaluate(args) -> int:
    config = RunConfig.load(args.config, args.set)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.mode == "retrieval":
        if not args.rankings:
            print("error: retrieval mode needs --rankings", file=sys.stderr)
            return EXIT_FATAL
        rankings = read_rankings_tsv(args.rankings)
        truth = load_retrieval_truth(args.truth)
        metrics = ranking_metrics(
            rankings,
            truth,
            ks=config.get("retrieval.metric_ks", [1, 5, 10, 50]),
            arr_max_k=config.get("retrieval.arr_max_k", 50),
        )
        values = {f"r@{k}": v for k, v in sorted(metrics.r_at_k.items())}
        values["arr"] = metrics.arr
        values["mrr"] = metrics.mrr
        write_text_report(
            out_dir / "evaluate.report.txt",
            "retrieval evaluation",
            [("ranking quality", metric_lines(values))],
            config.as_dict(),
        )
        write_json_summary(
            out_dir / "evaluate.json",
            {
                "metrics": {
                    "r_at_k": [[k, v] for k, v in sorted(metrics.r_at_k.items())],
                    "arr": metrics.arr,
                    "mrr": metrics.mrr,
                }
            },
            config.as_dict(),
        )
        plot_recall_curve(out_dir / "r_at_k.png", metrics.r_at_k, metrics.arr, metrics.mrr)
    else:
        if not args.detections:
            print("error: alignment mode needs --detections", file=sys.stderr)
            return EXIT_FATAL
        detections_path = Path(args.detections)
        if detections_path.is_dir():
            detections = read_detections_xml(detections_path)
        else:
            detections = read_detections_tsv(detections_path)
        cases = read_cases(args.truth)
        overall = score_detections(detections, cases)
        write_text_report(
            out_dir / "evaluate.report.txt",
            "alignment evaluation",
            [("character-level quality", metric_lines(overall.as_dict()))],
            config.as_dict(),
        )
        write_json_summary(
            out_dir / "evaluate.json", {"metrics": overall.as_dict()}, config.as_dict()
        )
        plot_plagdet_bars(
            out_dir / "plagdet.png", {"overall": {**overall.as_dict(), "f1": overall.f1}}
        )
    print(f"evaluation written -> {out_dir}")
    return EXIT_OK


def cmd_sample(args) -> int:
    config = RunConfig.load(args.config, args.set)
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    manifest = load_manifest(args.manifest)
    sampled = sample_manifest(manifest, args.n, seed)
    write_manifest(sampled, args.out)
    print(f"sampled {len(sampled)} of {len(manifest)} documents -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file (or $ONTOSIM_CONFIG)")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config value by dotted path (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontosim",
        description="cross-language document similarity over knowledge-graph entity vectors",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kg-build", help="ingest an entity dump into a store snapshot")
    _add_config_flags(p)
    p.add_argument("--dump", required=True, help="newline-delimited entity dump")
    p.add_argument("--out", required=True, help="store snapshot output path")
    p.add_argument("--languages", help="comma-separated language codes to retain")
    p.add_argument("--ids-file", help="keep only entity ids listed in this file")
    p.add_argument("--report", help="ingestion report path (default: <out>.report.txt)")
    p.add_argument("--fail-on-empty", action="store_true",
                   help="exit nonzero when the store ends up empty")
    p.set_defaults(func=cmd_kg_build)

    p = sub.add_parser("kg-filter", help="extract a subset dump by ids or class closure")
    _add_config_flags(p)
    p.add_argument("--dump", required=True)
    p.add_argument("--out", required=True, help="subset dump output (JSONL)")
    p.add_argument("--ids-file", help="file with one entity id per line")
    p.add_argument("--class", dest="klass", action="append",
                   help="keep entities transitively under this class (repeatable)")
    p.add_argument("--max-depth", type=int, default=0,
                   help="closure depth limit; 0 means unbounded")
    p.set_defaults(func=cmd_kg_filter)

    p = sub.add_parser("train-topics", help="train the topic classifier")
    _add_config_flags(p)
    p.add_argument("--train", help="TSV of topic<TAB>text (default: packaged corpus)")
    p.add_argument("--out", required=True, help="model snapshot output path")
    p.add_argument("--export", help="also write a plain-text TSV export")
    p.set_defaults(func=cmd_train_topics)

    p = sub.add_parser("vectorize", help="build entity vectors for a corpus manifest")
    _add_config_flags(p)
    p.add_argument("--manifest", required=True)
    p.add_argument("--kg", required=True, help="store snapshot")
    p.add_argument("--topic-model", help="topic model snapshot (default: packaged corpus)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, help="concurrent documents")
    p.set_defaults(func=cmd_vectorize)

    p = sub.add_parser("retrieve", help="rank a reference collection per query")
    _add_config_flags(p)
    p.add_argument("--queries", required=True, help="query vectors snapshot")
    p.add_argument("--references", required=True, help="reference vectors snapshot")
    p.add_argument("--truth", help="TSV of query doc_id<TAB>relevant doc_id")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("align", help="detect aligned passages between two corpora")
    _add_config_flags(p)
    p.add_argument("--suspicious", required=True, help="suspicious corpus manifest")
    p.add_argument("--sources", required=True, help="source corpus manifest")
    p.add_argument("--kg", required=True)
    p.add_argument("--topic-model")
    p.add_argument("--truth", help="ground truth (PAN XML file/dir or native TSV)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--window", type=int, help="fragment window in sentences")
    p.add_argument("--step", type=int, help="fragment step in sentences")
    p.add_argument("--top-k", dest="top_k", type=int, help="matches per query fragment")
    p.add_argument("--char-threshold", dest="char_threshold", type=int)
    p.add_argument("--score-threshold", dest="score_threshold", type=float)
    p.add_argument("--merge-rule", dest="merge_rule", choices=["both", "either"])
    p.add_argument("--workers", type=int, help="concurrent documents")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("tune", help="grid-search merge/classification thresholds")
    _add_config_flags(p)
    p.add_argument("--suspicious", required=True)
    p.add_argument("--sources", required=True)
    p.add_argument("--kg", required=True)
    p.add_argument("--topic-model")
    p.add_argument("--truth", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--char-grid", help="comma-separated char distance thresholds")
    p.add_argument("--score-grid", help="comma-separated score thresholds")
    p.add_argument("--workers", type=int, help="concurrent documents")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("evaluate", help="compute metrics over existing outputs")
    _add_config_flags(p)
    p.add_argument("mode", choices=["retrieval", "alignment"])
    p.add_argument("--rankings", help="rankings TSV (retrieval mode)")
    p.add_argument("--detections", help="detections TSV or XML dir (alignment mode)")
    p.add_argument("--truth", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sample", help="seeded random sample of a corpus manifest")
    _add_config_flags(p)
    p.add_argument("--manifest", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, help="sampling seed (default: config seed)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OntosimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
