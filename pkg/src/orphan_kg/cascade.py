"""Threshold-gated cascade over the allocation stages.

Stages run in ``config.stage_order`` until one accepts. The external snapshot
check always runs afterwards; when it matches it wins over an earlier
acceptance if ``external_overrides`` is set, and fills in when nothing
accepted. Accepted allocations are committed to the graph before the next
orphan is processed, so later orphans can reuse them through the fast path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .assoc_miner import allocate_association
from .concept_kb import ConceptKB
from .concept_miner import allocate_concept
from .config import CascadeConfig
from .embeddings import EmbeddingStore
from .external_linker import external_lookup
from .kgraph import Allocation, KnowledgeGraph, fastpath_allocate, upsert_allocation
from .ner import Tagger, allocate_ner
from .preprocess import PreprocessedDocument, document_or_empty, extract_context, normalize_term
from .verdict import Stage, Verdict


@dataclass(frozen=True)
class OrphanEntity:
    surface: str
    resume_id: str

    @classmethod
    def of(cls, text: str, resume_id: str) -> "OrphanEntity":
        return cls(normalize_term(text), resume_id)


@dataclass
class AllocationResult:
    orphan: str
    resume_id: str
    destination: str | None = None
    module: Stage | None = None
    distance: float | None = None
    trace: list[tuple[Stage, Verdict]] = field(default_factory=list)

    @property
    def allocated(self) -> bool:
        return self.destination is not None

    def to_dict(self) -> dict:
        return {
            "orphan": self.orphan,
            "resume_id": self.resume_id,
            "status": "allocated" if self.allocated else "unallocated",
            "destination": self.destination,
            "module": self.module.value if self.module else None,
            "distance": self.distance,
            "trace": [
                {
                    "stage": stage.value,
                    "accepted": v.accepted,
                    "candidate": v.destination,
                    "distance": v.distance,
                }
                for stage, v in self.trace
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "AllocationResult":
        allocated = d["status"] == "allocated"
        return cls(
            orphan=d["orphan"],
            resume_id=d["resume_id"],
            destination=d["destination"] if allocated else None,
            module=Stage(d["module"]) if allocated else None,
            distance=d["distance"] if allocated else None,
            trace=[
                (Stage(t["stage"]), Verdict(t["accepted"], t["candidate"], t["distance"]))
                for t in d.get("trace", [])
            ],
        )


class Cascade:
    """Holds the read-only resources; the graph and corpus are passed per call."""

    def __init__(
        self,
        store: EmbeddingStore,
        kb: ConceptKB,
        tagger: Tagger,
        config: CascadeConfig | None = None,
        created_at: str = "",
    ):
        self.store = store
        self.kb = kb
        self.tagger = tagger
        self.config = config or CascadeConfig()
        self.created_at = created_at

    def run_stage(
        self,
        stage: Stage,
        orphan: OrphanEntity,
        doc: PreprocessedDocument,
        ctx,
        corpus: Sequence[PreprocessedDocument],
        kg: KnowledgeGraph,
    ) -> Verdict:
        cfg = self.config
        t = cfg.threshold(stage) if stage != Stage.EXTERNAL else 0.0
        if stage == Stage.FASTPATH:
            return fastpath_allocate(kg, orphan.surface, ctx, self.store, t, cfg.aggregation)
        if stage == Stage.CONCEPT:
            return allocate_concept(
                orphan.surface, ctx, self.kb, self.store, t,
                cfg.concept_limit, cfg.concept_relations or None, cfg.aggregation,
            )
        if stage == Stage.ASSOCIATION:
            return allocate_association(
                orphan.surface, ctx, corpus, self.store, t,
                radius=cfg.radius,
                min_support=cfg.min_support,
                min_confidence=cfg.min_confidence,
                min_lift=cfg.min_lift,
                max_size=cfg.max_itemset_size,
                aggregation=cfg.aggregation,
            )
        if stage == Stage.NER:
            return allocate_ner(
                orphan.surface, doc, kg.nodes, self.store, self.tagger, t, cfg.ner_labels or None
            )
        return external_lookup(kg, orphan.surface)

    def allocate(
        self,
        orphan: OrphanEntity,
        corpus: Mapping[str, PreprocessedDocument],
        kg: KnowledgeGraph,
    ) -> AllocationResult:
        doc = document_or_empty(corpus, orphan.resume_id)
        docs = list(corpus.values())
        ctx = extract_context(doc, orphan.surface, self.config.radius)
        result = AllocationResult(orphan.surface, orphan.resume_id)
        accepted: tuple[Stage, Verdict] | None = None
        for stage in self.config.stage_order:
            verdict = self.run_stage(stage, orphan, doc, ctx, docs, kg)
            result.trace.append((stage, verdict))
            if verdict.accepted:
                accepted = (stage, verdict)
                break
        ext = self.run_stage(Stage.EXTERNAL, orphan, doc, ctx, docs, kg)
        result.trace.append((Stage.EXTERNAL, ext))
        if ext.accepted and (accepted is None or self.config.external_overrides):
            accepted = (Stage.EXTERNAL, ext)
        if accepted is None:
            return result
        stage, verdict = accepted
        result.destination, result.module, result.distance = (
            verdict.destination, stage, verdict.distance,
        )
        # the fast path reuses an existing edge, so it never writes
        if stage != Stage.FASTPATH:
            upsert_allocation(
                kg,
                Allocation(orphan.surface, verdict.destination, stage, verdict.distance, orphan.resume_id),
                self.created_at,
            )
        return result

    def allocate_batch(
        self,
        orphans: Iterable[OrphanEntity],
        corpus: Mapping[str, PreprocessedDocument],
        kg: KnowledgeGraph,
    ) -> list[AllocationResult]:
        return [self.allocate(o, corpus, kg) for o in orphans]
