"""Cascade configuration and its flat TOML file form."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import DataError
from .verdict import Stage

MINING_STAGES = (Stage.FASTPATH, Stage.CONCEPT, Stage.ASSOCIATION, Stage.NER)

DEFAULT_THRESHOLDS = {
    Stage.FASTPATH: 0.50,
    Stage.CONCEPT: 0.55,
    Stage.ASSOCIATION: 0.60,
    Stage.NER: 0.50,
}

# config keys naming resource files; resolved relative to the config file
RESOURCE_KEYS = ("embeddings", "concept_kb", "gazetteer", "stopwords", "lemmas")


class ConfigError(DataError):
    pass


def _stage(value) -> Stage:
    return value if isinstance(value, Stage) else Stage.parse(value)


@dataclass(frozen=True)
class CascadeConfig:
    stage_order: tuple[Stage, ...] = MINING_STAGES
    thresholds: dict = field(default_factory=lambda: dict(DEFAULT_THRESHOLDS))
    radius: int = 5
    min_support: float = 0.05
    min_confidence: float = 0.3
    min_lift: float = 1.0
    max_itemset_size: int = 3
    concept_limit: int = 50
    concept_relations: tuple[str, ...] = ()
    ner_labels: tuple[str, ...] = ()
    aggregation: str = "centroid"
    external_overrides: bool = True

    def __post_init__(self):
        order = tuple(_stage(s) for s in self.stage_order)
        if sorted(order, key=lambda s: s.value) != sorted(MINING_STAGES, key=lambda s: s.value):
            raise ConfigError(
                f"stage_order must be a permutation of {[s.value for s in MINING_STAGES]}"
            )
        object.__setattr__(self, "stage_order", order)
        thresholds = dict(DEFAULT_THRESHOLDS)
        thresholds.update({_stage(k): float(v) for k, v in self.thresholds.items()})
        for stage, t in thresholds.items():
            if not 0.0 <= t <= 2.0:
                raise ConfigError(f"threshold for {stage.value} must lie in [0, 2], got {t}")
        object.__setattr__(self, "thresholds", thresholds)
        if self.radius < 1:
            raise ConfigError("radius must be >= 1")
        if not 0 < self.min_support <= 1:
            raise ConfigError("min_support must be in (0, 1]")
        if not 0 < self.min_confidence <= 1:
            raise ConfigError("min_confidence must be in (0, 1]")
        if self.min_lift < 0:
            raise ConfigError("min_lift must be >= 0")
        if self.max_itemset_size < 2:
            raise ConfigError("max_itemset_size must be >= 2")
        if self.concept_limit < 1:
            raise ConfigError("concept_limit must be >= 1")
        if self.aggregation not in ("centroid", "min"):
            raise ConfigError("aggregation must be 'centroid' or 'min'")
        object.__setattr__(self, "concept_relations", tuple(self.concept_relations))
        object.__setattr__(self, "ner_labels", tuple(self.ner_labels))

    def threshold(self, stage: Stage) -> float:
        return self.thresholds[stage]


_THRESHOLD_KEYS = {f"threshold_{s.value.lower()}": s for s in MINING_STAGES}
_PLAIN_KEYS = {f.name for f in fields(CascadeConfig)} - {"thresholds"}


def config_from_mapping(data: dict) -> CascadeConfig:
    kwargs = {}
    thresholds = {}
    for key, value in data.items():
        if key in RESOURCE_KEYS:
            continue
        if key in _THRESHOLD_KEYS:
            thresholds[_THRESHOLD_KEYS[key]] = value
        elif key in _PLAIN_KEYS:
            kwargs[key] = tuple(value) if isinstance(value, list) else value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    try:
        return CascadeConfig(thresholds=thresholds, **kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path | None) -> tuple[CascadeConfig, dict[str, Path]]:
    """Parse a flat TOML config into a CascadeConfig plus resolved resource paths."""
    if path is None:
        return CascadeConfig(), {}
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    nested = [k for k, v in data.items() if isinstance(v, dict)]
    if nested:
        raise ConfigError(f"config must be flat; found tables {nested}")
    resources = {
        key: (path.parent / data[key]).resolve()
        for key in RESOURCE_KEYS
        if data.get(key)
    }
    return config_from_mapping(data), resources
