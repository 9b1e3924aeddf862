from pathlib import Path

import pytest

from orphan_kg.embeddings import EmbeddingStore
from orphan_kg.preprocess import PreprocessedDocument, RawDocument, normalize

ROOT = Path(__file__).resolve().parents[1]
DEMO = ROOT / "data" / "demo"
DEFAULT_CONFIG = ROOT / "configs" / "default.toml"

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    if report.when == "call" or report.failed:
        prev = _criteria.get(n, (title, True))
        _criteria[n] = (title, prev[1] and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}")


def doc(*words, doc_id="d"):
    """A preprocessed document with exactly the given surfaces."""
    return normalize(RawDocument(doc_id, " ".join(words)))


@pytest.fixture
def tiny_store():
    # 3-d toy space: programming / reptile / devops axes
    return EmbeddingStore.from_dict(
        {
            "programming": [1, 0, 0],
            "code": [1, 0.1, 0],
            "software": [1, 0, 0.1],
            "reptile": [0, 1, 0],
            "snake": [0.1, 1, 0],
            "devops": [0, 0, 1],
            "cloud": [0, 0.1, 1],
        }
    )


def empty_doc(doc_id="d"):
    return PreprocessedDocument(doc_id, ())
