"""Text normalization for resumes and context-window extraction around orphan mentions.

The pipeline is fixed: lowercase, tokenize, drop stopwords, then attach a Porter
stem and a table-driven lemma to every surviving token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from nltk.stem import PorterStemmer

from .errors import MalformedRow

# alphanumeric runs, joined by single '-' or '.' when alphanumerics sit on both
# sides, plus a trailing '+'/'#' run glued to the token ("c++", "c#") unless
# alphanumerics follow the run ("a+b" splits into "a", "b")
TOKEN_RE = re.compile(r"[^\W_]+(?:[-.][^\W_]+)*(?:[+#]+(?![+#]|[^\W_]))?")

_stemmer = PorterStemmer()


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str


@dataclass(frozen=True)
class Token:
    surface: str
    stem: str
    lemma: str
    position: int  # index in the token stream before stopword removal


@dataclass(frozen=True)
class PreprocessedDocument:
    id: str
    tokens: tuple[Token, ...]

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class ContextWindow:
    orphan_surface: str
    words: tuple[str, ...]
    radius: int
    occurrences: int = 0  # 0 means the leading-token fallback was used


def tokenize(text: str) -> list[str]:
    return TOKEN_RE.findall(text)


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    return _stemmer.stem(word) or word


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file (one word per line, '#' comments). None loads the bundled list."""
    if path is None:
        text = resources.files("orphan_kg").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


def load_lemmas(path: str | Path | None = None) -> dict[str, str]:
    if path is None:
        text = resources.files("orphan_kg").joinpath("data/lemmas.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    table = {}
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0].strip() or not fields[1].strip():
            raise MalformedRow(line_no, "expected surface<TAB>lemma")
        table[fields[0].strip().lower()] = fields[1].strip().lower()
    return table


def normalize(
    doc: RawDocument,
    stopwords: Iterable[str] = frozenset(),
    lemmas: Mapping[str, str] | None = None,
) -> PreprocessedDocument:
    stopwords = stopwords if isinstance(stopwords, (set, frozenset)) else set(stopwords)
    lemmas = lemmas or {}
    tokens = []
    for position, surface in enumerate(tokenize(doc.text.lower())):
        if surface in stopwords:
            continue
        st = stem(surface)
        tokens.append(Token(surface, st, lemmas.get(surface, st), position))
    return PreprocessedDocument(doc.id, tuple(tokens))


def normalize_term(term: str) -> str:
    """Canonical surface for a free-standing term: lowercased tokens joined by one space."""
    return " ".join(tokenize(term.lower()))


def find_occurrences(doc: PreprocessedDocument, orphan: str) -> list[tuple[int, int]]:
    """Token spans [start, end) where the orphan occurs.

    Surface matches win; stems are only compared when no surface match exists,
    so "networking" still finds a document that says "network".
    """
    parts = orphan.split()
    k = len(parts)
    if k == 0:
        return []
    surfaces = doc.surfaces
    spans = [(i, i + k) for i in range(len(surfaces) - k + 1) if surfaces[i : i + k] == parts]
    if spans:
        return spans
    stems = [t.stem for t in doc.tokens]
    target = [stem(p) for p in parts]
    return [(i, i + k) for i in range(len(stems) - k + 1) if stems[i : i + k] == target]


def extract_context(
    doc: PreprocessedDocument, orphan: str, radius: int, fallback: bool = True
) -> ContextWindow:
    """Collect up to ``radius`` tokens on each side of every orphan occurrence.

    Words are de-duplicated in first-seen order and never include the orphan.
    If the orphan does not occur and ``fallback`` is set, the first
    ``2 * radius`` tokens of the document stand in for the context.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    surfaces = doc.surfaces
    spans = find_occurrences(doc, orphan)
    collected: list[str] = []
    if spans:
        for start, end in spans:
            collected.extend(surfaces[max(0, start - radius) : start])
            collected.extend(surfaces[end : end + radius])
    elif fallback:
        collected = surfaces[: 2 * radius]
    words = []
    seen = {orphan}
    for w in collected:
        if w not in seen:
            seen.add(w)
            words.append(w)
    return ContextWindow(orphan, tuple(words), radius, len(spans))


def load_corpus(
    directory: str | Path,
    stopwords: Iterable[str] = frozenset(),
    lemmas: Mapping[str, str] | None = None,
) -> dict[str, PreprocessedDocument]:
    """Normalize every ``*.txt`` file in a directory, keyed by filename stem, in sorted order."""
    corpus = {}
    for path in sorted(Path(directory).glob("*.txt")):
        raw = RawDocument(path.stem, path.read_text("utf-8"))
        corpus[raw.id] = normalize(raw, stopwords, lemmas)
    return corpus


def write_tokens(doc: PreprocessedDocument, path: str | Path) -> None:
    """Token file: one ``position<TAB>surface<TAB>stem<TAB>lemma`` line per token."""
    lines = [f"{t.position}\t{t.surface}\t{t.stem}\t{t.lemma}\n" for t in doc.tokens]
    Path(path).write_text("".join(lines), "utf-8")


def document_or_empty(corpus: Mapping[str, PreprocessedDocument], resume_id: str) -> PreprocessedDocument:
    return corpus.get(resume_id) or PreprocessedDocument(resume_id, ())

