"""Tiny hand-built worlds, each steering the cascade to one specific stage."""

import math
from dataclasses import dataclass, field

from orphan_kg.cascade import Cascade, OrphanEntity
from orphan_kg.concept_kb import ConceptEdge, ConceptKB
from orphan_kg.config import CascadeConfig
from orphan_kg.embeddings import EmbeddingStore
from orphan_kg.kgraph import Edge, KnowledgeGraph
from orphan_kg.ner import GazetteerTagger
from orphan_kg.verdict import Stage

from conftest import doc

VECTORS = {
    "programming": [1, 0, 0],
    "code": [1, 0.1, 0],
    "software": [1, 0, 0.1],
    "reptile": [0, 1, 0],
    "snake": [0.1, 1, 0],
    "devops": [0, 0, 1],
    "cloud": [0, 0.1, 1],
}

# centroid of code and software is (1, .05, .05)
D_CODE_SOFTWARE = 1 - 1 / math.sqrt(1.005)
# cloud vs devops, snake vs reptile
D_NEIGHBOUR = 1 - 1 / math.sqrt(1.01)


@dataclass
class World:
    orphan: OrphanEntity
    corpus: dict
    kg: KnowledgeGraph = field(default_factory=KnowledgeGraph)
    kb: ConceptKB = field(default_factory=ConceptKB)
    gazetteer: dict = field(default_factory=dict)
    radius: int = 5

    def cascade(self, **overrides):
        config = CascadeConfig(radius=self.radius, **overrides)
        return Cascade(
            EmbeddingStore.from_dict(VECTORS), self.kb, GazetteerTagger(self.gazetteer), config, "T"
        )

    def run(self, **overrides):
        return self.cascade(**overrides).allocate(self.orphan, self.corpus, self.kg)


def corpus(*texts):
    return {f"r{i}": doc(*t.split(), doc_id=f"r{i}") for i, t in enumerate(texts, 1)}


def fastpath_world():
    kg = KnowledgeGraph()
    kg.add_edge(Edge("python", "programming", Stage.CONCEPT, 0.9))
    return World(OrphanEntity("python", "r1"), corpus("python code software"), kg)


def concept_world():
    kb = ConceptKB([ConceptEdge("RelatedTo", "python", "programming", 2.0)])
    return World(OrphanEntity("python", "r1"), corpus("python code software"), kb=kb)


def association_world():
    return World(OrphanEntity("flask", "r1"), corpus("programming flask programming"))


def ner_world():
    kg = KnowledgeGraph()
    kg.add_edge(Edge("terraform", "devops", Stage.CONCEPT, 0.9))
    # both window words are out of vocabulary; "cloud" sits outside radius 2
    return World(
        OrphanEntity("ansible", "r1"),
        corpus("ansible zzz qqq cloud"),
        kg,
        gazetteer={"cloud": "SKILL"},
        radius=2,
    )


def external_world():
    kg = KnowledgeGraph()
    kg.add_edge(Edge("kubernetes", "devops", Stage.EXTERNAL, 1.0, "2025-01-01T00:00:00Z", "esco"))
    return World(OrphanEntity("kubernetes", "r1"), corpus("kubernetes zzz"), kg)


def decline_world():
    return World(OrphanEntity("cobol", "r1"), corpus("cobol zzz"))


def order_world():
    """Concept says programming, NER says reptile; whichever runs first wins."""
    kg = KnowledgeGraph()
    kg.add_edge(Edge("lizard", "reptile", Stage.CONCEPT, 0.9))
    kb = ConceptKB([ConceptEdge("RelatedTo", "python", "programming", 1.0)])
    return World(
        OrphanEntity("python", "r1"), corpus("python code snake"), kg, kb, gazetteer={"snake": "SKILL"}
    )


# centroid of code and snake is (.55, .55, 0)
D_ORDER_CONCEPT = 1 - 1 / math.sqrt(2)
