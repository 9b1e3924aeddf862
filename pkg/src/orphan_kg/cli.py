"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import shlex
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import kgraph
from .cascade import Cascade
from .concept_kb import ConceptKB, load_concept_kb
from .config import ConfigError, load_config
from .embeddings import load_embeddings
from .errors import DataError
from .evaluate import evaluate, read_gold, read_orphans, read_results, write_results
from .external_linker import ingest_external, read_snapshot
from .ner import ExternalProcessTagger, GazetteerTagger, load_gazetteer
from .preprocess import load_corpus, load_lemmas, load_stopwords, write_tokens

log = logging.getLogger("orphan_kg")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _timestamp(value: str | None) -> str:
    if value:
        return value
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return when.strftime("%Y-%m-%dT%H:%M:%SZ")


def _resource(args, resources, key):
    override = getattr(args, key, None)
    return Path(override) if override else resources.get(key)


def cmd_preprocess(args) -> int:
    stopwords = load_stopwords(args.stopwords)
    lemmas = load_lemmas(args.lemmas)
    corpus = load_corpus(args.corpus, stopwords, lemmas)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for doc_id, doc in corpus.items():
        write_tokens(doc, out / f"{doc_id}.tsv")
    print(json.dumps({"documents": len(corpus), "out": str(out)}))
    return EXIT_OK


def cmd_ingest(args) -> int:
    kg = kgraph.load_or_empty(args.graph)
    records = []
    for snap in args.snapshot:
        records.extend(read_snapshot(snap))
    report = ingest_external(kg, records)
    kgraph.save(kg, args.graph)
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


def cmd_allocate(args) -> int:
    config, resources = load_config(args.config)
    emb_path = _resource(args, resources, "embeddings")
    if emb_path is None:
        raise ConfigError("no embeddings file: set 'embeddings' in the config or pass --embeddings")
    store = load_embeddings(emb_path)
    kb_path = _resource(args, resources, "concept_kb")
    kb = load_concept_kb(kb_path) if kb_path else ConceptKB()
    if args.tagger_command:
        tagger = ExternalProcessTagger(shlex.split(args.tagger_command))
    else:
        gaz_path = _resource(args, resources, "gazetteer")
        tagger = GazetteerTagger(load_gazetteer(gaz_path) if gaz_path else {})
    stopwords = load_stopwords(_resource(args, resources, "stopwords"))
    lemmas = load_lemmas(_resource(args, resources, "lemmas"))
    corpus = load_corpus(args.corpus, stopwords, lemmas)
    if not corpus:
        raise DataError(f"{args.corpus}: no .txt documents")
    orphans = read_orphans(args.orphans)
    kg = kgraph.load_or_empty(args.graph)
    cascade = Cascade(store, kb, tagger, config, created_at=_timestamp(args.timestamp))
    results = cascade.allocate_batch(orphans, corpus, kg)
    write_results(results, args.results)
    kgraph.save(kg, args.graph)
    allocated = sum(r.allocated for r in results)
    log.info("allocated %d of %d orphans", allocated, len(results))
    print(json.dumps({"orphans": len(results), "allocated": allocated, "results": str(args.results)}))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    report = evaluate(read_results(args.results), read_gold(args.gold))
    text = json.dumps(report.to_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def cmd_export(args) -> int:
    data = kgraph.export(kgraph.load(args.graph), args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orphan-kg", description="Allocate orphan resume entities to a knowledge graph.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("preprocess", help="normalize a corpus directory into token files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stopwords")
    p.add_argument("--lemmas")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("ingest-external", aliases=["refresh"], help="merge skill snapshots into the graph")
    p.add_argument("--snapshot", required=True, action="append", help="CSV snapshot; repeatable")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("allocate", help="run the cascade over an orphans file")
    p.add_argument("--orphans", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--config")
    p.add_argument("--results", default="results.ndjson")
    p.add_argument("--embeddings")
    p.add_argument("--concept-kb", dest="concept_kb")
    p.add_argument("--gazetteer")
    p.add_argument("--stopwords")
    p.add_argument("--lemmas")
    p.add_argument("--tagger-command", help="external tagger program, replaces the gazetteer")
    p.add_argument("--timestamp", help="ISO-8601 created_at for new edges (default: SOURCE_DATE_EPOCH or now)")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("evaluate", help="accuracy of a results log against gold labels")
    p.add_argument("--results", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("export", help="write the graph as dot, graphml or json")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", required=True, choices=sorted(kgraph.EXPORTERS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (DataError, OSError, ValueError) as exc:
        print(f"orphan-kg: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run_cli())
