"""Covering numbers of every union of conjugacy classes.

    python demos/normal_sets.py [group]
"""

import sys

from simplegrowth import get_group
from simplegrowth.normalsets import covering_number, enumerate_normal_subsets, growth_frontier

G = get_group(sys.argv[1] if len(sys.argv) > 1 else "PSL2(7)")
covers = [covering_number(ns) for ns in enumerate_normal_subsets(G)]
print(f"{G.name}: {len(covers)} unions of nontrivial classes")
for c in sorted(covers, key=lambda c: (c.m, c.size))[:12]:
    print(f"  classes {c.normal_set.class_ids}: |S|={c.size:4d} |S^2|={c.square:4d} m*={c.m}")

f = growth_frontier(covers)
print(f"every set covers by the power {f['b_all_covered']}; m* <= a log|G|/log|S| with a = {f['a_empirical']:.3f}")
for row in f["frontier"]:
    eps = "any" if row["eps_max"] is None else f"{row['eps_max']:.3f}"
    print(f"  b={row['b']}: |S^2| >= |S|^(1+eps) or S^b = G holds for eps up to {eps}")
