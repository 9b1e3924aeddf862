"""File-backed related-terms knowledge base in a ConceptNet-like edge format.

Rows are ``relation<TAB>start<TAB>end<TAB>weight``. ConceptNet URIs such as
``/r/RelatedTo`` and ``/c/en/machine_learning/n`` are reduced to plain terms, so
filtered assertion dumps can be loaded directly.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Iterable

from .errors import MalformedRow


@dataclass(frozen=True)
class ConceptEdge:
    relation: str
    start: str
    end: str
    weight: float


@dataclass(frozen=True)
class ConceptCandidate:
    term: str
    relation: str
    weight: float


def _relation(field: str) -> str:
    if field.startswith("/r/"):
        return field[3:]
    return field


def _term(field: str) -> str:
    if field.startswith("/c/"):
        # /c/<lang>/<term>[/<pos>...]
        parts = field.split("/")
        field = parts[3] if len(parts) > 3 else ""
    return " ".join(field.replace("_", " ").lower().split())


class ConceptKB:
    def __init__(self, edges: Iterable[ConceptEdge] = ()):
        self.edges: list[ConceptEdge] = []
        self._index: dict[str, list[ConceptEdge]] = defaultdict(list)
        for edge in edges:
            self.add(edge)

    def add(self, edge: ConceptEdge) -> None:
        self.edges.append(edge)
        self._index[edge.start].append(edge)
        if edge.end != edge.start:
            self._index[edge.end].append(edge)

    def __len__(self):
        return len(self.edges)

    def related(
        self, term: str, limit: int = 50, relations: Collection[str] | None = None
    ) -> list[ConceptCandidate]:
        """Terms sharing an edge with ``term`` in either direction.

        Sorted by weight descending, then term. A term reached through several
        edges appears once, with its heaviest edge.
        """
        best: dict[str, ConceptCandidate] = {}
        for edge in self._index.get(term, ()):
            if relations and edge.relation not in relations:
                continue
            other = edge.end if edge.start == term else edge.start
            if other == term:
                continue
            cand = ConceptCandidate(other, edge.relation, edge.weight)
            prev = best.get(other)
            if prev is None or (-cand.weight, cand.relation) < (-prev.weight, prev.relation):
                best[other] = cand
        ranked = sorted(best.values(), key=lambda c: (-c.weight, c.term))
        return ranked[:limit]


def related(kb: ConceptKB, term: str, limit: int = 50, relations=None) -> list[ConceptCandidate]:
    return kb.related(term, limit, relations)


def load_concept_kb(path: str | Path) -> ConceptKB:
    kb = ConceptKB()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise MalformedRow(line_no, f"expected 4 tab-separated fields, got {len(fields)}")
            relation, start, end = _relation(fields[0].strip()), _term(fields[1]), _term(fields[2])
            try:
                weight = float(fields[3])
            except ValueError:
                raise MalformedRow(line_no, "weight is not a number") from None
            if not relation or not start or not end:
                raise MalformedRow(line_no, "empty relation or term")
            if not math.isfinite(weight) or weight < 0:
                raise MalformedRow(line_no, "weight must be a finite non-negative number")
            kb.add(ConceptEdge(relation, start, end, weight))
    return kb
