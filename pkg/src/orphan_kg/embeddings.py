"""Pre-trained word vectors (GloVe text format) and cosine-distance queries."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError, MalformedRow


class InconsistentDimension(DataError):
    def __init__(self, line_no, expected, got):
        self.line_no = line_no
        super().__init__(f"line {line_no}: expected {expected} components, got {got}")


class EmptyFile(DataError):
    pass


class ZeroVector(ValueError):
    """Cosine distance is undefined for a zero-norm vector."""


class EmbeddingStore:
    """Immutable word -> vector map.

    Zero-norm rows are accepted by the loader but treated as out-of-vocabulary,
    since they carry no direction.
    """

    def __init__(self, vectors: dict[str, np.ndarray], dimension: int):
        self.dimension = dimension
        self._vectors = {}
        for word, vec in vectors.items():
            vec = np.asarray(vec, dtype=np.float64)
            if vec.shape != (dimension,):
                raise ValueError(f"vector for {word!r} has shape {vec.shape}")
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"vector for {word!r} has non-finite components")
            vec.setflags(write=False)
            self._vectors[word.lower()] = vec

    @classmethod
    def from_dict(cls, vectors: dict[str, Sequence[float]]) -> "EmbeddingStore":
        if not vectors:
            raise EmptyFile("no vectors")
        dim = len(next(iter(vectors.values())))
        return cls({w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}, dim)

    def __contains__(self, word):
        vec = self._vectors.get(word)
        return vec is not None and bool(np.any(vec))

    def __len__(self):
        return len(self._vectors)

    def words(self) -> list[str]:
        return sorted(self._vectors)

    def vector(self, word: str) -> np.ndarray | None:
        vec = self._vectors.get(word)
        if vec is None or not np.any(vec):
            return None
        return vec

    def phrase_vector(self, phrase: str) -> np.ndarray | None:
        """Vector for a word, or the unweighted mean for a space-separated phrase.

        Every component word must be in vocabulary; a phrase with any OOV part is OOV.
        """
        vec = self.vector(phrase)
        if vec is not None:
            return vec
        parts = phrase.split()
        if len(parts) < 2:
            return None
        vecs = [self.vector(p) for p in parts]
        if any(v is None for v in vecs):
            return None
        mean = np.mean(vecs, axis=0)
        return mean if np.any(mean) else None


def load_embeddings(path: str | Path, vocab_filter: Iterable[str] | None = None) -> EmbeddingStore:
    keep = set(vocab_filter) if vocab_filter is not None else None
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            fields = line.rstrip("\n").rstrip("\r").split(" ")
            if fields == [""]:
                continue
            if len(fields) < 2 or not fields[0]:
                raise MalformedRow(line_no, "expected a word followed by components")
            if dim is None:
                dim = len(fields) - 1
            elif len(fields) - 1 != dim:
                raise InconsistentDimension(line_no, dim, len(fields) - 1)
            word = fields[0].lower()
            if keep is not None and word not in keep:
                continue
            try:
                vec = np.array([float(x) for x in fields[1:]], dtype=np.float64)
            except ValueError:
                raise MalformedRow(line_no, "non-numeric component") from None
            if not np.all(np.isfinite(vec)):
                raise MalformedRow(line_no, "non-finite component")
            vectors.setdefault(word, vec)
    if dim is None:
        raise EmptyFile(f"{path}: no rows")
    return EmbeddingStore(vectors, dim)


def cosine_distance(u, v) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine distance of a zero vector")
    d = 1.0 - float(np.dot(u, v)) / (nu * nv)
    return min(2.0, max(0.0, d))


TIE_EPS = 1e-12


def argmin(scored: Iterable[tuple[str, float]]) -> tuple[str, float] | None:
    """Lowest-distance pair; distances within TIE_EPS of the minimum tie and go to the smaller word.

    Without the tolerance, float noise around 0 decides between identical vectors.
    """
    scored = list(scored)
    if not scored:
        return None
    low = min(d for _, d in scored)
    return min((w, d) for w, d in scored if d <= low + TIE_EPS)


def nearest(store: EmbeddingStore, query: str, candidates: Sequence[str]) -> tuple[str, float] | None:
    """Closest in-vocabulary candidate to ``query``; ties go to the lexicographically smaller word."""
    q = store.phrase_vector(query)
    if q is None:
        return None
    vecs = ((c, store.phrase_vector(c)) for c in candidates)
    return argmin((c, cosine_distance(q, v)) for c, v in vecs if v is not None)


def context_centroid(store: EmbeddingStore, context: Sequence[str]) -> np.ndarray | None:
    vecs = [v for v in (store.phrase_vector(w) for w in context) if v is not None]
    if not vecs:
        return None
    mean = np.mean(vecs, axis=0)
    return mean if np.any(mean) else None


def centroid_distance(store: EmbeddingStore, candidate: str, context: Sequence[str]) -> float | None:
    vec = store.phrase_vector(candidate)
    centroid = context_centroid(store, context)
    if vec is None or centroid is None:
        return None
    return cosine_distance(vec, centroid)


def min_pairwise_distance(store: EmbeddingStore, candidate: str, context: Sequence[str]) -> float | None:
    vec = store.phrase_vector(candidate)
    if vec is None:
        return None
    best = math.inf
    for w in context:
        cv = store.phrase_vector(w)
        if cv is not None:
            best = min(best, cosine_distance(vec, cv))
    return None if best == math.inf else best


class ContextScorer:
    """Scores candidates against one fixed context; the centroid is computed once.

    ``aggregation`` is "centroid" (default) or "min" for the closest single context word.
    """

    def __init__(self, store: EmbeddingStore, context: Sequence[str], aggregation: str = "centroid"):
        if aggregation not in ("centroid", "min"):
            raise ValueError(f"unknown aggregation {aggregation!r}")
        self.store = store
        self.context = tuple(context)
        self.aggregation = aggregation
        self._centroid = context_centroid(store, context) if aggregation == "centroid" else None

    def __call__(self, candidate: str) -> float | None:
        if self.aggregation == "min":
            return min_pairwise_distance(self.store, candidate, self.context)
        vec = self.store.phrase_vector(candidate)
        if vec is None or self._centroid is None:
            return None
        return cosine_distance(vec, self._centroid)

    def best(self, candidates: Iterable[str]) -> tuple[str, float] | None:
        scored = ((cand, self(cand)) for cand in candidates)
        return argmin((c, d) for c, d in scored if d is not None)
