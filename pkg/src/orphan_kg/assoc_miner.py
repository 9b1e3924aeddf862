"""Association stage: Apriori over corpus-wide context transactions.

Each document in which the orphan occurs contributes one transaction made of
its context-window words, the bi-grams of adjacent window words, and the
orphan itself. Rules touching the orphan nominate candidate words, which are
then ranked by embedding distance to the current resume's context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .embeddings import ContextScorer, EmbeddingStore
from .errors import DataError
from .preprocess import ContextWindow, PreprocessedDocument, extract_context
from .verdict import Verdict, gate

# absorbs float noise in threshold comparisons on ratios like 2/3
EPS = 1e-12

Itemset = tuple[str, ...]


class EmptyCorpus(DataError):
    pass


@dataclass(frozen=True)
class ItemsetSupport:
    itemset: Itemset  # sorted
    support: float


@dataclass(frozen=True)
class AssociationRule:
    antecedent: Itemset
    consequent: Itemset
    support: float
    confidence: float
    lift: float


def build_transactions(
    corpus: Sequence[PreprocessedDocument], orphan: str, radius: int
) -> list[frozenset[str]]:
    if not corpus:
        raise EmptyCorpus("corpus has no documents")
    transactions = []
    for doc in corpus:
        ctx = extract_context(doc, orphan, radius, fallback=False)
        if ctx.occurrences == 0:
            continue
        items = set(ctx.words)
        items.update(f"{a} {b}" for a, b in zip(ctx.words, ctx.words[1:]))
        items.add(orphan)
        transactions.append(frozenset(items))
    return transactions


def _min_count(min_support: float, n: int) -> int:
    return max(1, math.ceil(min_support * n - 1e-9))


def apriori(
    transactions: Sequence[Iterable[str]], min_support: float, max_size: int | None = None
) -> list[ItemsetSupport]:
    """All itemsets with support >= ``min_support``, level by level.

    Candidates of size k are joins of frequent (k-1)-itemsets sharing a k-2
    prefix, kept only if every (k-1)-subset is frequent. Output is sorted by
    (size, items).
    """
    if not 0 < min_support <= 1:
        raise ValueError("min_support must be in (0, 1]")
    txns = [frozenset(t) for t in transactions]
    n = len(txns)
    if n == 0:
        return []
    need = _min_count(min_support, n)

    counts: dict[Itemset, int] = {}
    for t in txns:
        for item in t:
            counts[(item,)] = counts.get((item,), 0) + 1
    level = sorted(s for s, c in counts.items() if c >= need)
    result = [ItemsetSupport(s, counts[s] / n) for s in level]

    k = 2
    while level and (max_size is None or k <= max_size):
        frequent_prev = set(level)
        candidates = []
        for i, a in enumerate(level):
            for b in level[i + 1 :]:
                if a[:-1] != b[:-1]:
                    break  # level is sorted, so shared prefixes are contiguous
                cand = a + (b[-1],)
                if all(sub in frequent_prev for sub in combinations(cand, k - 1)):
                    candidates.append(cand)
        cand_counts = dict.fromkeys(candidates, 0)
        for t in txns:
            if len(t) < k:
                continue
            for cand in candidates:
                if t.issuperset(cand):
                    cand_counts[cand] += 1
        level = [c for c in candidates if cand_counts[c] >= need]
        result.extend(ItemsetSupport(c, cand_counts[c] / n) for c in level)
        k += 1
    return result


def derive_rules(
    frequent: Sequence[ItemsetSupport], min_confidence: float, min_lift: float = 0.0
) -> list[AssociationRule]:
    support = {f.itemset: f.support for f in frequent}
    rules = []
    for f in frequent:
        items = f.itemset
        if len(items) < 2:
            continue
        for r in range(1, len(items)):
            for ante in combinations(items, r):
                cons = tuple(x for x in items if x not in ante)
                conf = f.support / support[ante]
                lift = conf / support[cons]
                if conf + EPS >= min_confidence and lift + EPS >= min_lift:
                    rules.append(AssociationRule(ante, cons, f.support, conf, lift))
    rules.sort(key=lambda r: (-r.support, -r.confidence, r.antecedent, r.consequent))
    return rules


def rule_candidates(rules: Iterable[AssociationRule], orphan: str) -> list[str]:
    """Uni-gram words mentioned by rules that involve the orphan item; bi-grams are split."""
    orphan_parts = set(orphan.split())
    words = set()
    for rule in rules:
        if orphan not in rule.antecedent and orphan not in rule.consequent:
            continue
        for item in rule.antecedent + rule.consequent:
            if item == orphan:
                continue
            words.update(item.split())
    words -= orphan_parts
    words.discard(orphan)
    return sorted(words)


def allocate_association(
    orphan: str,
    ctx: ContextWindow,
    corpus: Sequence[PreprocessedDocument],
    store: EmbeddingStore,
    threshold: float = 0.60,
    radius: int = 5,
    min_support: float = 0.05,
    min_confidence: float = 0.3,
    min_lift: float = 1.0,
    max_size: int | None = 3,
    aggregation: str = "centroid",
) -> Verdict:
    if not corpus:
        return Verdict.decline()
    transactions = build_transactions(corpus, orphan, radius)
    if not transactions:
        return Verdict.decline()
    frequent = apriori(transactions, min_support, max_size)
    rules = derive_rules(frequent, min_confidence, min_lift)
    candidates = rule_candidates(rules, orphan)
    if not candidates:
        return Verdict.decline()
    best = ContextScorer(store, ctx.words, aggregation).best(candidates)
    return gate(best, threshold)
