"""Write a group as a product of conjugates of a tiny set, then check it from scratch.

    python demos/decomposition_certificate.py
"""

import math

import numpy as np

from simplegrowth import ElementSet, get_group
from simplegrowth.growth import doubling_decomposition, verify_certificate
from simplegrowth.setalg import conjugate, product_many

G = get_group("PSL2(13)")
S = ElementSet.from_indices(G, np.random.default_rng(3).choice(G.order, size=2, replace=False))
cert = doubling_decomposition(S)

print(f"{G.name}: S = {S.to_list()}")
for phase in cert.phases:
    print("  ", phase)
print(f"N = {cert.N} conjugates (predicted 3 * {cert.bigset_m} * 2^{cert.doublings} = {cert.expected_length})")
print(f"information bound: N >= log|G|/log|S| = {math.log(G.order) / math.log(S.card):.2f}")
print("verify_certificate:", verify_certificate(cert))

# the same check by hand
P = product_many(*(conjugate(S, g) for g in cert.conjugators))
print(f"|S^g1 ... S^gN| = {P.card} of {G.order}")
