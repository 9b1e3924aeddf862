"""NER stage: tag entities in the resume, then pick the closest existing graph node.

Any object with a ``tag(doc) -> list[TaggedEntity]`` method can serve as the
tagger. ``GazetteerTagger`` is the deterministic default and
``ExternalProcessTagger`` shells out to a separate program, which is how a
transformer model can be plugged in without importing an ML runtime here.
"""

from __future__ import annotations

import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Mapping, Protocol, Sequence

from .embeddings import EmbeddingStore, argmin, cosine_distance
from .errors import DataError, MalformedRow
from .preprocess import PreprocessedDocument, normalize_term
from .verdict import Verdict, gate


@dataclass(frozen=True)
class TaggedEntity:
    surface: str
    label: str
    start: int  # token span [start, end)
    end: int


class Tagger(Protocol):
    def tag(self, doc: PreprocessedDocument) -> list[TaggedEntity]: ...


def gazetteer_tag(doc: PreprocessedDocument, gazetteer: Mapping[str, str]) -> list[TaggedEntity]:
    """Left-to-right scan; at each position the longest gazetteer entry wins."""
    entries = {tuple(k.split()): label for k, label in gazetteer.items() if k.split()}
    if not entries:
        return []
    longest = max(len(k) for k in entries)
    surfaces = doc.surfaces
    found = []
    i = 0
    while i < len(surfaces):
        for length in range(min(longest, len(surfaces) - i), 0, -1):
            key = tuple(surfaces[i : i + length])
            if key in entries:
                found.append(TaggedEntity(" ".join(key), entries[key], i, i + length))
                i += length
                break
        else:
            i += 1
    return found


def load_gazetteer(path: str | Path) -> dict[str, str]:
    gazetteer = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[1].strip():
                raise MalformedRow(line_no, "expected surface<TAB>label")
            surface = normalize_term(fields[0])
            if not surface:
                raise MalformedRow(line_no, "empty surface")
            gazetteer[surface] = fields[1].strip()
    return gazetteer


class GazetteerTagger:
    def __init__(self, gazetteer: Mapping[str, str]):
        self.gazetteer = dict(gazetteer)

    def tag(self, doc: PreprocessedDocument) -> list[TaggedEntity]:
        return gazetteer_tag(doc, self.gazetteer)


class TaggerProtocolError(DataError):
    pass


class ExternalProcessTagger:
    """Runs ``command`` once per document.

    The child receives one token surface per line on stdin and must print one
    ``surface<TAB>label<TAB>start<TAB>end`` line per entity, with [start, end)
    token offsets.
    """

    def __init__(self, command: Sequence[str], timeout: float = 60.0):
        self.command = list(command)
        self.timeout = timeout

    def tag(self, doc: PreprocessedDocument) -> list[TaggedEntity]:
        surfaces = doc.surfaces
        stdin = "".join(s + "\n" for s in surfaces)
        try:
            proc = subprocess.run(
                self.command, input=stdin, capture_output=True, text=True, timeout=self.timeout
            )
        except subprocess.TimeoutExpired:
            raise TaggerProtocolError(f"tagger timed out after {self.timeout}s") from None
        if proc.returncode != 0:
            raise TaggerProtocolError(f"tagger exited {proc.returncode}: {proc.stderr.strip()}")
        return parse_tagger_output(proc.stdout, surfaces)


def parse_tagger_output(text: str, surfaces: Sequence[str]) -> list[TaggedEntity]:
    entities = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise TaggerProtocolError(f"line {line_no}: expected 4 fields")
        surface, label = fields[0], fields[1]
        try:
            start, end = int(fields[2]), int(fields[3])
        except ValueError:
            raise TaggerProtocolError(f"line {line_no}: non-integer span") from None
        if not 0 <= start < end <= len(surfaces):
            raise TaggerProtocolError(f"line {line_no}: span {start}..{end} out of bounds")
        if " ".join(surfaces[start:end]) != surface:
            raise TaggerProtocolError(f"line {line_no}: surface does not match span")
        entities.append(TaggedEntity(surface, label, start, end))
    return entities


def allocate_ner(
    orphan: str,
    doc: PreprocessedDocument,
    nodes: Collection[str],
    store: EmbeddingStore,
    tagger: Tagger,
    threshold: float = 0.50,
    labels: Collection[str] | None = None,
) -> Verdict:
    """Closest graph node to any tagged entity of ``doc``.

    ``nodes`` is the graph's node set; the orphan's own node is never a
    candidate. The verdict's distance is the node's minimum distance over all
    in-vocabulary entities.
    """
    entity_vecs = []
    for ent in tagger.tag(doc):
        if ent.surface == orphan or (labels and ent.label not in labels):
            continue
        vec = store.phrase_vector(ent.surface)
        if vec is not None:
            entity_vecs.append(vec)
    if not entity_vecs:
        return Verdict.decline()
    scored = []
    for node in nodes:
        nv = store.phrase_vector(node) if node != orphan else None
        if nv is not None:
            scored.append((node, min(cosine_distance(nv, ev) for ev in entity_vecs)))
    return gate(argmin(scored), threshold)

