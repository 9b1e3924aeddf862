"""Full CLI pipeline on the demo fixture: ingest, allocate, evaluate, export.

    python scripts/run_demo.py [OUTDIR]

Writes kg.json, results.ndjson, report.json and kg.dot/kg.graphml into OUTDIR
(default: ./demo_out) and prints the accuracy report.
"""

import sys
from pathlib import Path

from orphan_kg.cli import run_cli

ROOT = Path(__file__).resolve().parents[1]
DEMO = ROOT / "data" / "demo"


def main(out: Path) -> int:
    out.mkdir(parents=True, exist_ok=True)
    graph, results = out / "kg.json", out / "results.ndjson"
    graph.unlink(missing_ok=True)  # start from an empty graph every time
    steps = [
        ["ingest-external", "--snapshot", str(DEMO / "external.csv"), "--graph", str(graph)],
        ["allocate", "--orphans", str(DEMO / "orphans.tsv"), "--corpus", str(DEMO / "corpus"),
         "--graph", str(graph), "--config", str(ROOT / "configs" / "default.toml"),
         "--results", str(results), "--timestamp", "2026-01-10T00:00:00Z"],
        ["evaluate", "--results", str(results), "--gold", str(DEMO / "gold.tsv"), "--out", str(out / "report.json")],
        ["export", "--graph", str(graph), "--format", "dot", "--out", str(out / "kg.dot")],
        ["export", "--graph", str(graph), "--format", "graphml", "--out", str(out / "kg.graphml")],
    ]
    for argv in steps:
        code = run_cli(argv)
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main(Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")))
