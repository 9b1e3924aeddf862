"""External skill-taxonomy snapshots: ingestion into the graph and existence lookup.

Snapshots are CSV files with header ``skill,category,source,retrieved_at``.
Each valid record becomes an External edge skill -> category. Lookup is an
existence check (exact surface, then stem), not a similarity search.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import DataError
from .kgraph import Edge, KnowledgeGraph, SelfLoop
from .preprocess import normalize_term, stem
from .verdict import Stage, Verdict

SNAPSHOT_HEADER = ["skill", "category", "source", "retrieved_at"]


@dataclass(frozen=True)
class ExternalSkillRecord:
    skill: str
    category: str
    source: str
    retrieved_at: str  # ISO-8601 UTC


@dataclass
class IngestReport:
    added_nodes: int = 0
    added_edges: int = 0
    updated_edges: int = 0
    skipped: int = 0
    reasons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "added_nodes": self.added_nodes,
            "added_edges": self.added_edges,
            "updated_edges": self.updated_edges,
            "skipped": self.skipped,
            "reasons": list(self.reasons),
        }


def parse_timestamp(value: str) -> datetime:
    ts = datetime.fromisoformat(value.strip().replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def read_snapshot(path: str | Path) -> list[ExternalSkillRecord]:
    """Read a snapshot CSV. Field validation is deferred to ingestion so bad rows are counted, not fatal."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != SNAPSHOT_HEADER:
            raise DataError(f"{path}: header must be {','.join(SNAPSHOT_HEADER)}")
        return [
            ExternalSkillRecord(
                normalize_term(row.get("skill") or ""),
                normalize_term(row.get("category") or ""),
                (row.get("source") or "").strip(),
                (row.get("retrieved_at") or "").strip(),
            )
            for row in reader
        ]


def write_snapshot(records, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SNAPSHOT_HEADER)
        for r in records:
            writer.writerow([r.skill, r.category, r.source, r.retrieved_at])


def ingest_external(kg: KnowledgeGraph, records) -> IngestReport:
    report = IngestReport()
    for i, rec in enumerate(records):
        skill, category = normalize_term(rec.skill), normalize_term(rec.category)
        if not skill or not category:
            report.skipped += 1
            report.reasons.append(f"record {i}: empty skill or category")
            continue
        try:
            ts = parse_timestamp(rec.retrieved_at)
        except ValueError:
            report.skipped += 1
            report.reasons.append(f"record {i}: bad retrieved_at {rec.retrieved_at!r}")
            continue
        stamp = ts.strftime("%Y-%m-%dT%H:%M:%SZ")
        edge = Edge(skill, category, Stage.EXTERNAL, 1.0, stamp, rec.source)
        existing = kg.get_edge(skill, category, Stage.EXTERNAL)
        if existing is not None:
            if existing.created_at and parse_timestamp(existing.created_at) >= ts:
                report.skipped += 1
            else:
                kg.replace_edge(edge)
                report.updated_edges += 1
            continue
        before = len(kg.nodes)
        try:
            kg.add_edge(edge)
        except SelfLoop:
            report.skipped += 1
            report.reasons.append(f"record {i}: skill equals category")
            continue
        report.added_nodes += len(kg.nodes) - before
        report.added_edges += 1
    return report


def _stem_key(term: str) -> str:
    return " ".join(stem(p) for p in term.split())


def external_lookup(kg: KnowledgeGraph, orphan: str) -> Verdict:
    """Category of the External skill matching ``orphan``.

    An exact skill match is tried first, then a stem match. Several matches
    resolve to the lexicographically smallest (skill, category).
    """
    ext = kg.edges_with(Stage.EXTERNAL)
    exact = [e for e in ext if e.source == orphan]
    if not exact:
        key = _stem_key(orphan)
        exact = [e for e in ext if _stem_key(e.source) == key]
    if not exact:
        return Verdict.decline()
    hit = min(exact, key=lambda e: (e.source, e.destination))
    if hit.destination == orphan:
        return Verdict.decline()
    return Verdict.accept(hit.destination, 0.0)
