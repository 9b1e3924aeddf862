"""Concept stage: related KB terms scored against the orphan's context."""

from __future__ import annotations

from typing import Collection

from .concept_kb import ConceptKB
from .embeddings import ContextScorer, EmbeddingStore
from .preprocess import ContextWindow
from .verdict import Verdict, gate


def allocate_concept(
    orphan: str,
    ctx: ContextWindow,
    kb: ConceptKB,
    store: EmbeddingStore,
    threshold: float = 0.55,
    limit: int = 50,
    relations: Collection[str] | None = None,
    aggregation: str = "centroid",
) -> Verdict:
    # KB weight only decides which candidates survive the limit; scoring is distance alone
    candidates = [c.term for c in kb.related(orphan, limit, relations)]
    if not candidates:
        return Verdict.decline()
    best = ContextScorer(store, ctx.words, aggregation).best(candidates)
    return gate(best, threshold)
