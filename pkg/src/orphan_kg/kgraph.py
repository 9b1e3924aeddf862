"""Knowledge graph store, persistence, exports and the fast-path allocator.

Edges are stored directed (orphan -> destination) and keyed by
(source, destination, provenance); neighbourhood queries ignore direction.
Mutations take a writer lock so a node never becomes visible without its edge.
"""

from __future__ import annotations

import io
import json
import math
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import networkx as nx

from .embeddings import ContextScorer, EmbeddingStore
from .errors import DataError
from .preprocess import ContextWindow
from .verdict import Stage, Verdict, gate

SCHEMA_VERSION = 1


class SelfLoop(ValueError):
    pass


class SchemaViolation(DataError):
    pass


class IoFailure(DataError):
    pass


@dataclass(frozen=True)
class Edge:
    source: str
    destination: str
    provenance: Stage
    weight: float = 1.0
    created_at: str = ""
    origin: str = ""  # resume id for allocations, snapshot source tag for External edges

    @property
    def key(self) -> tuple[str, str, Stage]:
        return (self.source, self.destination, self.provenance)


@dataclass(frozen=True)
class Allocation:
    orphan: str
    destination: str
    module: Stage
    distance: float
    resume_id: str = ""


class KnowledgeGraph:
    def __init__(self):
        self._nodes: set[str] = set()
        self._edges: dict[tuple[str, str, Stage], Edge] = {}
        self._adj: dict[str, set[str]] = {}
        self._lock = threading.RLock()

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self._nodes)

    @property
    def edges(self) -> list[Edge]:
        return [self._edges[k] for k in sorted(self._edges, key=_edge_sort_key)]

    def __contains__(self, node):
        return node in self._nodes

    def __eq__(self, other):
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __repr__(self):
        return f"KnowledgeGraph(nodes={len(self._nodes)}, edges={len(self._edges)})"

    def get_edge(self, source, destination, provenance) -> Edge | None:
        return self._edges.get((source, destination, Stage(provenance)))

    def add_node(self, node: str) -> bool:
        if not node:
            raise ValueError("empty node name")
        with self._lock:
            if node in self._nodes:
                return False
            self._nodes.add(node)
            self._adj[node] = set()
            return True

    def add_edge(self, edge: Edge) -> bool:
        """Insert ``edge`` with both endpoints; returns False if the key already exists."""
        if edge.source == edge.destination:
            raise SelfLoop(f"self-loop on {edge.source!r}")
        if not edge.source or not edge.destination:
            raise ValueError("empty node name")
        with self._lock:
            if edge.key in self._edges:
                return False
            self.add_node(edge.source)
            self.add_node(edge.destination)
            self._edges[edge.key] = edge
            self._adj[edge.source].add(edge.destination)
            self._adj[edge.destination].add(edge.source)
            return True

    def replace_edge(self, edge: Edge) -> None:
        with self._lock:
            if edge.key not in self._edges:
                raise KeyError(edge.key)
            self._edges[edge.key] = edge

    def neighbors(self, node: str) -> list[str]:
        return sorted(self._adj.get(node, ()))

    def edges_with(self, provenance: Stage) -> list[Edge]:
        return [e for e in self.edges if e.provenance == provenance]

    def check_integrity(self) -> None:
        for e in self._edges.values():
            if e.source not in self._nodes or e.destination not in self._nodes:
                raise SchemaViolation(f"dangling edge {e.key}")
            if e.source == e.destination:
                raise SchemaViolation(f"self-loop {e.key}")


def _edge_sort_key(key):
    s, d, p = key
    return (s, d, p.value)


def neighbors(kg: KnowledgeGraph, node: str) -> list[str]:
    return kg.neighbors(node)


def upsert_allocation(kg: KnowledgeGraph, alloc: Allocation, created_at: str = "") -> bool:
    """Attach the orphan to its destination; a repeat of an existing edge is a no-op.

    Edge weight is the similarity ``1 - distance / 2``, which lies in [0, 1].
    """
    if alloc.orphan == alloc.destination:
        raise SelfLoop(f"cannot allocate {alloc.orphan!r} to itself")
    edge = Edge(
        alloc.orphan,
        alloc.destination,
        Stage(alloc.module),
        weight=1.0 - alloc.distance / 2.0,
        created_at=created_at,
        origin=alloc.resume_id,
    )
    return kg.add_edge(edge)


def fastpath_allocate(
    kg: KnowledgeGraph,
    orphan: str,
    ctx: ContextWindow,
    store: EmbeddingStore,
    threshold: float = 0.50,
    aggregation: str = "centroid",
) -> Verdict:
    if orphan not in kg:
        return Verdict.decline()
    candidates = kg.neighbors(orphan)
    best = ContextScorer(store, ctx.words, aggregation).best(candidates)
    return gate(best, threshold)


# persistence ----------------------------------------------------------------


def to_document(kg: KnowledgeGraph) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "nodes": sorted(kg.nodes),
        "edges": [
            {
                "s": e.source,
                "d": e.destination,
                "prov": e.provenance.value,
                "w": e.weight,
                "t": e.created_at,
                "o": e.origin,
            }
            for e in kg.edges
        ],
    }


def dumps(kg: KnowledgeGraph) -> str:
    return json.dumps(to_document(kg), indent=2, ensure_ascii=False) + "\n"


def from_document(doc) -> KnowledgeGraph:
    if not isinstance(doc, dict):
        raise SchemaViolation("top level must be an object")
    if doc.get("version") != SCHEMA_VERSION:
        raise SchemaViolation(f"unsupported version {doc.get('version')!r}")
    nodes, edges = doc.get("nodes"), doc.get("edges")
    if not isinstance(nodes, list) or not isinstance(edges, list):
        raise SchemaViolation("'nodes' and 'edges' must be lists")
    kg = KnowledgeGraph()
    for n in nodes:
        if not isinstance(n, str) or not n:
            raise SchemaViolation(f"bad node {n!r}")
        if not kg.add_node(n):
            raise SchemaViolation(f"duplicate node {n!r}")
    for i, raw in enumerate(edges):
        if not isinstance(raw, dict) or set(raw) != {"s", "d", "prov", "w", "t", "o"}:
            raise SchemaViolation(f"edge {i}: expected keys s, d, prov, w, t, o")
        s, d, w = raw["s"], raw["d"], raw["w"]
        if not isinstance(s, str) or not isinstance(d, str):
            raise SchemaViolation(f"edge {i}: endpoints must be strings")
        if s not in kg or d not in kg:
            raise SchemaViolation(f"edge {i}: endpoint not in nodes")
        if s == d:
            raise SchemaViolation(f"edge {i}: self-loop")
        try:
            prov = Stage(raw["prov"])
        except ValueError:
            raise SchemaViolation(f"edge {i}: unknown provenance {raw['prov']!r}") from None
        if isinstance(w, bool) or not isinstance(w, (int, float)) or not math.isfinite(w):
            raise SchemaViolation(f"edge {i}: weight must be a finite number")
        if not isinstance(raw["t"], str) or not isinstance(raw["o"], str):
            raise SchemaViolation(f"edge {i}: 't' and 'o' must be strings")
        if not kg.add_edge(Edge(s, d, prov, float(w), raw["t"], raw["o"])):
            raise SchemaViolation(f"edge {i}: duplicate (s, d, prov)")
    return kg


def loads(text: str) -> KnowledgeGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON: {exc}") from None
    return from_document(doc)


def save(kg: KnowledgeGraph, path: str | Path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(dumps(kg), encoding="utf-8")
        tmp.replace(path)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def load(path: str | Path) -> KnowledgeGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaViolation(f"not UTF-8: {exc}") from None
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return loads(text)


def load_or_empty(path: str | Path) -> KnowledgeGraph:
    return load(path) if Path(path).exists() else KnowledgeGraph()


# exports ----------------------------------------------------------------------


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(kg: KnowledgeGraph) -> str:
    lines = ["digraph kg {"]
    for n in sorted(kg.nodes):
        lines.append(f"  {_dot_id(n)};")
    for e in kg.edges:
        lines.append(
            f"  {_dot_id(e.source)} -> {_dot_id(e.destination)} "
            f'[provenance="{e.provenance.value}", weight={e.weight!r}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphml(kg: KnowledgeGraph) -> str:
    g = nx.MultiDiGraph()
    g.add_nodes_from(sorted(kg.nodes))
    for e in kg.edges:
        g.add_edge(
            e.source,
            e.destination,
            key=e.provenance.value,
            provenance=e.provenance.value,
            weight=e.weight,
            created_at=e.created_at,
            origin=e.origin,
        )
    buf = io.BytesIO()
    nx.write_graphml(g, buf, encoding="utf-8")
    return buf.getvalue().decode("utf-8")


EXPORTERS = {"dot": to_dot, "graphml": to_graphml, "json": dumps}


def export(kg: KnowledgeGraph, fmt: str) -> bytes:
    try:
        render = EXPORTERS[fmt]
    except KeyError:
        raise ValueError(f"unknown export format {fmt!r}") from None
    return render(kg).encode("utf-8")


def graph_from_edges(edges: Iterable[Edge]) -> KnowledgeGraph:
    kg = KnowledgeGraph()
    for e in edges:
        kg.add_edge(e)
    return kg

