"""Build a few small simple groups and look at their conjugacy classes.

    python demos/groups_and_classes.py
"""

from simplegrowth import get_group
from simplegrowth.groups import invariants

for name in ["Alt(5)", "PSL2(4)", "PSL2(7)", "PSL3(2)", "PSL2(9)", "Alt(6)"]:
    G = get_group(name)
    inv = invariants(G)
    print(f"{name:8s} order {G.order:5d} on {G.degree} points, class sizes {sorted(inv.class_sizes)}")

# Alt(5) and PSL2(4) have the same order and the same class equation,
# as do PSL2(7) and PSL3(2). For PSL2(q) the bounds on the smallest class
# and the minimal degree of a nontrivial representation hold exactly:
for q in (4, 5, 7, 8, 9, 11, 13):
    G = get_group(f"PSL2({q})")
    inv = invariants(G)
    print(
        f"PSL2({q:2d}): q={q} <= minclass={inv.minclass} < |G|={G.order} <= q^8={q**8};"
        f" k={inv.mindeg_lb}, k^8={inv.mindeg_lb**8}"
    )
