"""Accuracy and coverage as one stage's threshold varies, others at defaults.

    python scripts/threshold_sweep.py [--stage Concept] [--steps 11]
"""

import argparse

from orphan_kg.config import MINING_STAGES
from orphan_kg.verdict import Stage

from _demo import fmt_pct, load_demo


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--stage", type=Stage.parse, action="append", help="repeatable; default all four")
    parser.add_argument("--steps", type=int, default=11)
    parser.add_argument("--max", type=float, default=1.0, help="largest threshold swept")
    args = parser.parse_args()
    demo = load_demo()
    for stage in args.stage or MINING_STAGES:
        print(f"\n{stage.value}")
        print(f"{'tau':>6} {'alloc':>5} {'acc%':>6} {'cover':>6}  modules")
        for i in range(args.steps):
            tau = args.max * i / (args.steps - 1)
            thresholds = dict(demo.config.thresholds, **{stage: tau})
            _, report = demo.run(demo.with_config(thresholds=thresholds))
            modules = " ".join(f"{m}={a}" for m, (a, _) in sorted(report.per_module.items()))
            print(f"{tau:6.2f} {report.total_allocated:>5} {fmt_pct(report.accuracy_percent):>6} "
                  f"{report.coverage:6.2f}  {modules}")


if __name__ == "__main__":
    main()
