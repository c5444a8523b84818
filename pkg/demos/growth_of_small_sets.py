"""Small sets grow under a well chosen conjugate, unless their cube is already everything.

    python demos/growth_of_small_sets.py
"""

import numpy as np

from simplegrowth import ElementSet, get_group
from simplegrowth.growth import greedy_big_set, theorem2_certificate, translate_to_generating
from simplegrowth.setalg import generates

G = get_group("PSL2(11)")
rng = np.random.default_rng(7)

print(f"{G.name}, order {G.order}")
for size in (2, 3, 5, 10, 40, 200):
    S = ElementSet.from_indices(G, rng.choice(G.order, size=size, replace=False))
    w = theorem2_certificate(S)
    if w.branch == "CUBE":
        print(f"|S|={size:3d}: S^3 = G")
    else:
        print(f"|S|={size:3d}: best conjugate g={w.g} gives |SS^g|={w.size} = |S|^{w.exponent:.3f}")

# A two element set rarely generates, but some translate of it does.
S = ElementSet.from_indices(G, rng.choice(G.order, size=2, replace=False))
T, u, x = translate_to_generating(S)
print(f"S={S.to_list()} generates: {generates(S)}; S u^-1 x with u={u}, x={x} generates: {generates(T)}")

# Products of conjugates with no collisions: |X| = |S|^m exactly.
res = greedy_big_set(ElementSet.from_indices(G, rng.choice(G.order, size=3, replace=False)))
print(f"big set: m={res.m}, |X|={res.X.card} = 3^{res.m}, conjugators {res.conjugators}")
print(f"(|X||S|)^2 = {(res.X.card * 3) ** 2} >= minclass(SS^-1) = {res.minclass_ss}")
