"""Orphan entity allocation over a growing knowledge graph."""

from .cascade import AllocationResult, Cascade, OrphanEntity
from .config import CascadeConfig, load_config
from .kgraph import KnowledgeGraph
from .verdict import Stage, Verdict

__all__ = [
    "AllocationResult",
    "Cascade",
    "CascadeConfig",
    "KnowledgeGraph",
    "OrphanEntity",
    "Stage",
    "Verdict",
    "load_config",
]
