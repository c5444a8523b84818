"""Exact checks of a few product-set inequalities on random instances.

    python demos/inequalities.py
"""

import numpy as np

from simplegrowth import ElementSet, get_group
from simplegrowth.inequalities import (
    WordPattern,
    check_petridis_tripling,
    check_plunnecke,
    check_ruzsa,
    check_skew_chain,
    min_ratio_subset,
)

G = get_group("Alt(6)")
rng = np.random.default_rng(1)


def rand(k):
    return ElementSet.from_indices(G, rng.choice(G.order, size=k, replace=False))


for r in [check_ruzsa(rand(5), rand(7), rand(9)), check_petridis_tripling(rand(12))]:
    print(f"{r.kind:18s} {r.lhs} {r.relation} {r.rhs}  pass={r.passed}")

pattern = WordPattern.of([(int(g), bool(i)) for g, i in zip(rng.integers(G.order, size=4), rng.integers(2, size=4))])
r = check_skew_chain(rand(10), pattern)
print(f"skew chain, 4 factors: {r.lhs} <= K^42 |S| with K = {r.extra['K']}")

# Plunnecke for a normal B: the minimising subset X of A does the work.
B = ElementSet(G, G.classes.class_of == 1)
A = rand(10)
X = min_ratio_subset(A, B)
print(f"|A|={A.card}, |B|={B.card}, minimiser |X|={X.card}")
for r in check_plunnecke(A, B, 4):
    print(f"  m={r.inputs['m']}: |XB^m| = {r.lhs} <= K^m |X| = {float(r.rhs):.1f}")
