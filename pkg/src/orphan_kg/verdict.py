"""Stage identifiers and the verdict every allocator returns."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Stage(str, Enum):
    FASTPATH = "FastPath"
    CONCEPT = "Concept"
    ASSOCIATION = "Association"
    NER = "NER"
    EXTERNAL = "External"

    @classmethod
    def parse(cls, name: str) -> "Stage":
        key = name.strip().lower().replace("_", "").replace("-", "")
        for stage in cls:
            if stage.value.lower() == key:
                return stage
        raise ValueError(f"unknown stage {name!r}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of one allocator.

    Accepted verdicts always carry a destination and distance. Declined
    verdicts carry the best candidate seen, if any, so traces show near misses.
    """

    accepted: bool
    destination: str | None = None
    distance: float | None = None

    @classmethod
    def accept(cls, destination: str, distance: float) -> "Verdict":
        return cls(True, destination, distance)

    @classmethod
    def decline(cls, best: tuple[str, float] | None = None) -> "Verdict":
        if best is None:
            return cls(False)
        return cls(False, best[0], best[1])


def gate(best: tuple[str, float] | None, threshold: float) -> Verdict:
    """Accept ``best`` iff its distance is at most ``threshold`` (inclusive)."""
    if not 0.0 <= threshold <= 2.0:
        raise ValueError(f"threshold {threshold} outside [0, 2]")
    if best is None:
        return Verdict.decline()
    word, dist = best
    if dist <= threshold:
        return Verdict.accept(word, dist)
    return Verdict.decline(best)
