"""Loads the demo fixture once for the experiment scripts."""

import sys
from dataclasses import dataclass, replace
from pathlib import Path

from orphan_kg.cascade import Cascade
from orphan_kg.concept_kb import load_concept_kb
from orphan_kg.config import CascadeConfig, load_config
from orphan_kg.embeddings import load_embeddings
from orphan_kg.evaluate import evaluate, read_gold, read_orphans
from orphan_kg.external_linker import ingest_external, read_snapshot
from orphan_kg.kgraph import KnowledgeGraph
from orphan_kg.ner import GazetteerTagger, load_gazetteer
from orphan_kg.preprocess import load_corpus, load_lemmas, load_stopwords

ROOT = Path(__file__).resolve().parents[1]
DEMO = ROOT / "data" / "demo"
CONFIG = ROOT / "configs" / "default.toml"


@dataclass
class Demo:
    config: CascadeConfig
    store: object
    kb: object
    tagger: object
    corpus: dict
    orphans: list
    gold: list
    snapshot: list

    def run(self, config: CascadeConfig | None = None):
        """Fresh graph seeded from the snapshot, then one batch; returns (results, report)."""
        kg = KnowledgeGraph()
        ingest_external(kg, self.snapshot)
        cascade = Cascade(self.store, self.kb, self.tagger, config or self.config, "2026-01-10T00:00:00Z")
        results = cascade.allocate_batch(self.orphans, self.corpus, kg)
        return results, evaluate(results, self.gold)

    def with_config(self, **changes) -> CascadeConfig:
        return replace(self.config, **changes)


def load_demo(config_path=CONFIG) -> Demo:
    config, res = load_config(config_path)
    stopwords = load_stopwords(res.get("stopwords"))
    lemmas = load_lemmas(res.get("lemmas"))
    return Demo(
        config=config,
        store=load_embeddings(res["embeddings"]),
        kb=load_concept_kb(res["concept_kb"]),
        tagger=GazetteerTagger(load_gazetteer(res["gazetteer"])),
        corpus=load_corpus(DEMO / "corpus", stopwords, lemmas),
        orphans=read_orphans(DEMO / "orphans.tsv"),
        gold=read_gold(DEMO / "gold.tsv"),
        snapshot=read_snapshot(DEMO / "external.csv"),
    )


def fmt_pct(x):
    return "  n/a" if x is None else f"{x:5.1f}"


if __name__ == "__main__":
    sys.exit("helper module; run one of the other scripts")
