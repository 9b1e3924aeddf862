import random
import sys
import textwrap

import pytest
from pytest import approx

from orphan_kg.embeddings import EmbeddingStore
from orphan_kg.errors import MalformedRow
from orphan_kg.ner import (
    ExternalProcessTagger,
    GazetteerTagger,
    TaggedEntity,
    TaggerProtocolError,
    allocate_ner,
    gazetteer_tag,
    load_gazetteer,
    parse_tagger_output,
)
from oracles import random_vectors, scan_ner
from conftest import doc


def test_longest_match():
    d = doc("machine", "learning", "engineer")
    got = gazetteer_tag(d, {"machine learning": "SKILL", "engineer": "TITLE", "machine": "X"})
    assert got == [
        TaggedEntity("machine learning", "SKILL", 0, 2),
        TaggedEntity("engineer", "TITLE", 2, 3),
    ]


def test_empty_gazetteer():
    assert gazetteer_tag(doc("python"), {}) == []


def test_single_hit():
    assert gazetteer_tag(doc("python"), {"python": "SKILL"}) == [TaggedEntity("python", "SKILL", 0, 1)]


def test_overlaps_resolved_left_to_right():
    d = doc("a", "b", "c")
    # "a b" starts first and wins over the longer "b c" that overlaps it
    assert [e.surface for e in gazetteer_tag(d, {"a b": "X", "b c": "Y", "c": "Z"})] == ["a b", "c"]


def test_load_gazetteer(tmp_path):
    path = tmp_path / "gaz.tsv"
    path.write_text("# c\nMachine  Learning\tSKILL\npython\tSKILL\n", encoding="utf-8")
    assert load_gazetteer(path) == {"machine learning": "SKILL", "python": "SKILL"}
    path.write_text("python SKILL\n", encoding="utf-8")
    with pytest.raises(MalformedRow):
        load_gazetteer(path)


@pytest.fixture
def store():
    return EmbeddingStore.from_dict(
        {"software": [1.0, 0.1], "programming": [1.0, 0.0], "snake": [0.0, 1.0]}
    )


def test_allocate_ner_accepts(store):
    d = doc("senior", "software", "engineer")
    tagger = GazetteerTagger({"software": "SKILL"})
    v = allocate_ner("python", d, {"programming"}, store, tagger, threshold=0.5)
    assert v.accepted and v.destination == "programming"
    assert v.distance == approx(1 - 1 / (1.01) ** 0.5, abs=1e-12)


def test_allocate_ner_empty_graph(store):
    tagger = GazetteerTagger({"software": "SKILL"})
    v = allocate_ner("python", doc("software"), set(), store, tagger, 2.0)
    assert not v.accepted and v.destination is None


def test_allocate_ner_no_entities(store):
    v = allocate_ner("python", doc("software"), {"programming"}, store, GazetteerTagger({}), 2.0)
    assert not v.accepted and v.destination is None


def test_allocate_ner_skips_orphan_entity_and_node(store):
    tagger = GazetteerTagger({"snake": "SKILL", "software": "SKILL"})
    v = allocate_ner("snake", doc("snake", "software"), {"snake", "programming"}, store, tagger, 2.0)
    assert v.destination == "programming"


def test_allocate_ner_label_allowlist(store):
    tagger = GazetteerTagger({"snake": "ANIMAL", "software": "SKILL"})
    v = allocate_ner("x", doc("snake", "software"), {"snake", "programming"}, store, tagger, 2.0, labels={"ANIMAL"})
    assert v.destination == "snake" and v.distance == approx(0.0, abs=1e-12)


def test_allocate_ner_matches_exhaustive_scan():
    rng = random.Random(5)
    words = [f"w{i}" for i in range(12)]
    for _ in range(50):
        vectors = random_vectors(rng, words, 3, oov_rate=0.2)
        if not vectors:
            continue
        store = EmbeddingStore.from_dict(vectors)
        gaz = {w: "SKILL" for w in rng.sample(words, 4)}
        d = doc(*rng.choices(words, k=8))
        nodes = set(rng.sample(words, 5))
        ents = [e.surface for e in gazetteer_tag(d, gaz)]
        want = scan_ner(vectors, ents, sorted(nodes), "w0")
        v = allocate_ner("w0", d, nodes, store, GazetteerTagger(gaz), 2.0)
        if want is None:
            assert not v.accepted and v.destination is None
        else:
            assert v.destination == want[0]
            assert v.distance == approx(want[1], abs=1e-9)
            assert v.destination in nodes


TAGGER_SCRIPT = textwrap.dedent(
    """
    import sys
    tokens = [line.rstrip("\\n") for line in sys.stdin]
    for i, tok in enumerate(tokens):
        if tok in ("software", "python"):
            print(f"{tok}\\tSKILL\\t{i}\\t{i + 1}")
    """
)


def test_external_process_tagger(tmp_path, store):
    script = tmp_path / "tagger.py"
    script.write_text(TAGGER_SCRIPT, encoding="utf-8")
    tagger = ExternalProcessTagger([sys.executable, str(script)])
    d = doc("built", "software", "python")
    assert tagger.tag(d) == [
        TaggedEntity("software", "SKILL", 1, 2),
        TaggedEntity("python", "SKILL", 2, 3),
    ]
    v = allocate_ner("python", d, {"programming", "snake"}, store, tagger, 0.5)
    assert v.destination == "programming"


def test_external_process_tagger_failure(tmp_path):
    tagger = ExternalProcessTagger([sys.executable, "-c", "import sys; sys.exit(3)"])
    with pytest.raises(TaggerProtocolError):
        tagger.tag(doc("a"))


def test_external_process_tagger_timeout():
    tagger = ExternalProcessTagger([sys.executable, "-c", "import time; time.sleep(5)"], timeout=0.2)
    with pytest.raises(TaggerProtocolError):
        tagger.tag(doc("a"))


@pytest.mark.parametrize(
    "line",
    ["a\tX\t0", "a\tX\t0\t5", "a\tX\tone\t1", "b\tX\t0\t1"],
)
def test_tagger_output_validation(line):
    with pytest.raises(TaggerProtocolError):
        parse_tagger_output(line + "\n", ["a"])
