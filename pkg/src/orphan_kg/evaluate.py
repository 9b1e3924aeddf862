"""Allocation accuracy against gold labels.

accuracy = 100 * correct / allocated. Unallocated orphans are excluded from
the denominator and reported separately, together with coverage
(allocated / total) so the all-orphans reading can be recovered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .cascade import AllocationResult, OrphanEntity
from .errors import DataError, MalformedRow
from .preprocess import normalize_term


class MissingGold(DataError):
    def __init__(self, orphan, resume_id):
        self.orphan, self.resume_id = orphan, resume_id
        super().__init__(f"no gold label for orphan {orphan!r} in resume {resume_id!r}")


@dataclass(frozen=True)
class LabeledOrphan:
    orphan: str
    resume_id: str
    gold_destination: str


@dataclass
class AccuracyReport:
    total: int = 0
    total_allocated: int = 0
    correct: int = 0
    unallocated: int = 0
    per_module: dict[str, list[int]] = field(default_factory=dict)  # module -> [allocated, correct]

    @property
    def accuracy_percent(self) -> float | None:
        if self.total_allocated == 0:
            return None
        return 100.0 * self.correct / self.total_allocated

    @property
    def coverage(self) -> float | None:
        return None if self.total == 0 else self.total_allocated / self.total

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "total_allocated": self.total_allocated,
            "correct": self.correct,
            "accuracy_percent": self.accuracy_percent,
            "unallocated": self.unallocated,
            "coverage": self.coverage,
            "per_module": {
                m: {"allocated": a, "correct": c} for m, (a, c) in sorted(self.per_module.items())
            },
        }


def evaluate(results: Iterable[AllocationResult], gold: Iterable[LabeledOrphan]) -> AccuracyReport:
    labels = {}
    for g in gold:
        labels[(g.orphan, g.resume_id)] = normalize_term(g.gold_destination)
    report = AccuracyReport()
    for r in results:
        key = (r.orphan, r.resume_id)
        if key not in labels:
            raise MissingGold(*key)
        report.total += 1
        if not r.allocated:
            report.unallocated += 1
            continue
        report.total_allocated += 1
        counts = report.per_module.setdefault(r.module.value, [0, 0])
        counts[0] += 1
        if normalize_term(r.destination) == labels[key]:
            report.correct += 1
            counts[1] += 1
    return report


# file formats -------------------------------------------------------------------


def _tsv_rows(path, n_fields):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != n_fields or not all(f.strip() for f in fields):
                raise MalformedRow(line_no, f"expected {n_fields} non-empty tab-separated fields")
            yield [f.strip() for f in fields]


def read_orphans(path: str | Path) -> list[OrphanEntity]:
    """Orphans file: ``orphan<TAB>resume_id`` per line."""
    return [OrphanEntity.of(o, rid) for o, rid in _tsv_rows(path, 2)]


def read_gold(path: str | Path) -> list[LabeledOrphan]:
    """Gold file: ``orphan<TAB>resume_id<TAB>gold_destination`` per line."""
    return [
        LabeledOrphan(normalize_term(o), rid, normalize_term(dest))
        for o, rid, dest in _tsv_rows(path, 3)
    ]


def write_results(results: Iterable[AllocationResult], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in results:
            fh.write(r.to_json() + "\n")


def read_results(path: str | Path) -> list[AllocationResult]:
    results = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                results.append(AllocationResult.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise MalformedRow(line_no, str(exc)) from None
    return results
