"""Accuracy and destinations under every ordering of the four mining stages.

    python scripts/order_sensitivity.py

Prints one row per permutation, then the orphans whose destination changes
with the order.
"""

from collections import defaultdict
from itertools import permutations

from orphan_kg.config import MINING_STAGES

from _demo import fmt_pct, load_demo


def main():
    demo = load_demo()
    by_orphan = defaultdict(dict)
    print(f"{'order':<40} {'alloc':>5} {'correct':>7} {'acc%':>6}")
    for order in permutations(MINING_STAGES):
        results, report = demo.run(demo.with_config(stage_order=order))
        label = " > ".join(s.value for s in order)
        print(f"{label:<40} {report.total_allocated:>5} {report.correct:>7} {fmt_pct(report.accuracy_percent):>6}")
        for r in results:
            by_orphan[(r.orphan, r.resume_id)][label] = r.destination
    print("\norder-sensitive orphans:")
    for (orphan, rid), dests in sorted(by_orphan.items()):
        distinct = sorted({d or "-" for d in dests.values()})
        if len(distinct) > 1:
            print(f"  {orphan} ({rid}): {', '.join(distinct)}")


if __name__ == "__main__":
    main()
