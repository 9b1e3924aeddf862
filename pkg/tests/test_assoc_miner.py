from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx

from orphan_kg.assoc_miner import (
    EmptyCorpus,
    allocate_association,
    apriori,
    build_transactions,
    derive_rules,
    rule_candidates,
)
from orphan_kg.embeddings import EmbeddingStore
from orphan_kg.preprocess import extract_context
from oracles import brute_frequent, scan_centroid_best
from conftest import doc

ABC = [{"a", "b"}, {"a", "c"}, {"a", "b"}]


def as_dict(frequent):
    return {f.itemset: f.support for f in frequent}


def test_build_transactions_gates_on_occurrence():
    corpus = [doc("expert", "python"), doc("java", "spring")]
    assert len(build_transactions(corpus, "python", 2)) == 1


def test_build_transactions_items():
    (t,) = build_transactions([doc("expert", "python", "django")], "python", 1)
    assert t == {"python", "expert", "django", "expert django"}


def test_build_transactions_absent_orphan():
    assert build_transactions([doc("a", "b")], "python", 2) == []


def test_build_transactions_empty_corpus():
    with pytest.raises(EmptyCorpus):
        build_transactions([], "python", 2)


def test_apriori_example():
    got = as_dict(apriori(ABC, 2 / 3))
    assert got == {("a",): 1.0, ("b",): approx(2 / 3), ("a", "b"): approx(2 / 3)}
    assert got == approx(brute_frequent(ABC, 2 / 3))


def test_apriori_full_support():
    assert as_dict(apriori(ABC, 1.0)) == {("a",): 1.0}


def test_apriori_empty():
    assert apriori([], 0.5) == []


def test_apriori_output_order():
    out = apriori([{"b", "a", "c"}, {"a", "b", "c"}], 0.5)
    keys = [(len(f.itemset), f.itemset) for f in out]
    assert keys == sorted(keys)
    assert all(list(f.itemset) == sorted(f.itemset) for f in out)


def test_apriori_size_cap():
    out = apriori([{"a", "b", "c", "d"}], 1.0, max_size=2)
    assert max(len(f.itemset) for f in out) == 2


def test_apriori_rejects_bad_support():
    with pytest.raises(ValueError):
        apriori(ABC, 0)


def test_rules_example():
    rules = derive_rules(apriori(ABC, 2 / 3), min_confidence=0.5)
    ab = next(r for r in rules if r.antecedent == ("a",) and r.consequent == ("b",))
    assert ab.confidence == approx(2 / 3)
    assert ab.lift == approx(1.0)
    assert ab.support == approx(2 / 3)
    strict = derive_rules(apriori(ABC, 2 / 3), min_confidence=0.9)
    assert [(r.antecedent, r.consequent) for r in strict] == [(("b",), ("a",))]


def test_rules_singletons_only():
    assert derive_rules(apriori(ABC, 1.0), 0.1) == []


def test_rule_candidates_split_bigrams():
    rules = derive_rules(apriori([{"python", "expert django", "flask"}] * 2, 1.0), 0.1, 1.0)
    assert rule_candidates(rules, "python") == ["django", "expert", "flask"]


transactions = st.lists(st.sets(st.sampled_from("abcdefgh"), max_size=6), max_size=12)


@settings(max_examples=150, deadline=None)
@given(transactions, st.integers(1, 12))
def test_apriori_equals_brute_force(txns, k):
    min_support = k / max(1, len(txns)) if txns else 0.5
    min_support = min(1.0, min_support)
    got = as_dict(apriori(txns, min_support))
    want = brute_frequent(txns, min_support)
    assert set(got) == set(want)
    for key in want:
        assert got[key] == approx(want[key], abs=1e-12)
    for itemset in got:
        for r in range(1, len(itemset)):
            for sub in combinations(itemset, r):
                assert sub in got


@settings(deadline=None)
@given(transactions, st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_support_monotone(txns, s1, s2):
    lo, hi = sorted((s1, s2))
    assert set(as_dict(apriori(txns, hi))) <= set(as_dict(apriori(txns, lo)))


@settings(deadline=None)
@given(transactions, st.floats(0.05, 1.0), st.floats(0.01, 1.0), st.floats(0, 3))
def test_rule_arithmetic(txns, s, c, lift):
    frequent = apriori(txns, s)
    support = as_dict(frequent)
    for rule in derive_rules(frequent, c, lift):
        assert not set(rule.antecedent) & set(rule.consequent)
        union = tuple(sorted(rule.antecedent + rule.consequent))
        assert abs(rule.confidence * support[rule.antecedent] - support[union]) <= 1e-9
        assert abs(rule.lift * support[rule.consequent] - rule.confidence) <= 1e-9
        assert rule.confidence >= c - 1e-9 and rule.lift >= lift - 1e-9


# allocation -------------------------------------------------------------------

VECS = {
    "programming": [1.0, 0.0, 0.0],
    "code": [1.0, 0.3, 0.0],
    "software": [1.0, -0.2, 0.1],
    "snake": [0.0, 1.0, 0.0],
}


@pytest.fixture
def four_docs():
    return [
        doc("code", "python", "programming", "software", doc_id="d1"),
        doc("python", "programming", doc_id="d2"),
        doc("programming", "python", doc_id="d3"),
        doc("snake", "python", doc_id="d4"),
    ]


def test_allocate_association_four_docs(four_docs):
    store = EmbeddingStore.from_dict(VECS)
    ctx = extract_context(four_docs[0], "python", 2)
    assert ctx.words == ("code", "programming", "software")
    v = allocate_association("python", ctx, four_docs, store, threshold=0.6, radius=2)
    # every transaction holds python, so every co-occurring word is nominated
    want = scan_centroid_best(VECS, ["code", "programming", "snake", "software"], ctx.words)
    assert want[0] == "programming"
    assert v.accepted and v.destination == "programming"
    assert v.distance == approx(want[1], abs=1e-12)
    # centroid (1, 1/30, 1/30): distance = 1 - 1/sqrt(1 + 2/900)
    assert v.distance == approx(1 - 1 / (1 + 2 / 900) ** 0.5, abs=1e-12)


def test_allocate_association_absent_orphan(four_docs):
    store = EmbeddingStore.from_dict(VECS)
    ctx = extract_context(four_docs[0], "ruby", 2)
    v = allocate_association("ruby", ctx, four_docs, store, radius=2)
    assert not v.accepted and v.destination is None


def test_allocate_association_support_too_high():
    corpus = [doc("a", "python", "b", doc_id="1"), doc("c", "python", "d", doc_id="2")]
    store = EmbeddingStore.from_dict({"a": [1, 0], "b": [0, 1], "c": [1, 1], "d": [1, -1]})
    ctx = extract_context(corpus[0], "python", 1)
    # each context word has support 1/2 and the orphan's own singleton yields no rule
    v = allocate_association("python", ctx, corpus, store, threshold=2.0, radius=1, min_support=0.9)
    assert not v.accepted and v.destination is None
