"""Constructive growth procedures in finite simple groups.

* conjugate-growth search: the ``g`` maximising ``|S S^g|``;
* the growth-or-cube disjunction witness;
* translating ``S`` to a generating set;
* the greedy "big set" builder (a product of conjugates with no collisions);
* the Gowers cube check;
* the full decomposition of ``G`` into a product of conjugates of ``S``, with
  a certificate that can be re-checked independently.

Conjugators are always reported as exponents: ``h`` stands for
``S^h = h^-1 S h``. Ties are broken by the smallest element index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .groups import GroupSpec, IndexedGroup, get_group, invariants
from .setalg import (
    CHUNK,
    ElementSet,
    conjugate,
    conjugate_growth_sizes,
    cube_is_full,
    generates,
    inverse,
    is_full,
    product,
    product_many,
    translate,
)


class GrowthError(RuntimeError):
    """A procedure that is guaranteed to succeed in a simple group did not."""


def _require_simple(G: IndexedGroup) -> None:
    if not G.spec.is_simple:
        raise ValueError(f"{G.name} is not simple")


def best_conjugate_growth(S: ElementSet, candidates=None) -> tuple[int, int]:
    """Exhaustive ``argmax_g |S S^g|``; returns ``(g, size)``.

    The scan stops early once ``min(|S|^2, |G|)`` is reached, which cannot
    change the (smallest-index) argmax.
    """
    if S.card == 0:
        raise ValueError("best_conjugate_growth needs a nonempty set")
    G = S.group
    cand = np.arange(G.order) if candidates is None else np.asarray(candidates, dtype=np.intp)
    ceiling = min(S.card**2, G.order)
    step = max(64, CHUNK // max(1, S.card**2))
    best_g, best = -1, -1
    for start in range(0, len(cand), step):
        chunk = cand[start : start + step]
        sizes = conjugate_growth_sizes(S, chunk)
        i = int(np.argmax(sizes))
        if sizes[i] > best:
            best_g, best = int(chunk[i]), int(sizes[i])
        if best >= ceiling:
            break
    return best_g, best


@dataclass(frozen=True)
class DisjunctionWitness:
    branch: Literal["CUBE", "GROWTH"]
    g: int | None
    size: int
    exponent: float | None

    def to_dict(self) -> dict:
        return {"branch": self.branch, "g": self.g, "size": self.size, "exponent": self.exponent}


def theorem2_certificate(S: ElementSet) -> DisjunctionWitness:
    """Witness for ``S^3 = G`` or ``|S S^g| > |S|`` for some ``g``.

    The cube is tested first. Otherwise the best conjugate is returned with its
    exponent ``log|SS^g| / log|S|``. In a simple group one branch must hold.
    """
    G = S.group
    if S.card < 2:
        raise ValueError("need |S| >= 2")
    _require_simple(G)
    if cube_is_full(S):
        return DisjunctionWitness("CUBE", None, G.order, None)
    g, size = best_conjugate_growth(S)
    if size <= S.card:
        raise GrowthError(f"{G.name}: S^3 != G and no conjugate grows S (|S|={S.card})")
    return DisjunctionWitness("GROWTH", g, size, math.log(size) / math.log(S.card))


def translate_to_generating(S: ElementSet) -> tuple[ElementSet, int, int]:
    """Find ``x`` with ``<S u^-1 x> = G`` where ``u`` is the smallest element of ``S``.

    Returns ``(S u^-1 x, u, x)``. By 3/2-generation of simple groups such an
    ``x`` exists whenever ``|S| >= 2``.
    """
    G = S.group
    if S.card < 2:
        raise ValueError("need |S| >= 2")
    _require_simple(G)
    u = int(S.indices[0])
    base = translate(S, int(G.inv[u]))
    for x in range(G.order):
        T = translate(base, x)
        if generates(T):
            return T, u, x
    raise GrowthError(f"{G.name}: no translate of S generates the group")


def minclass_of(S: ElementSet) -> int:
    """Smallest nontrivial conjugacy class meeting ``S`` (0 if ``S`` has only the identity)."""
    cp = S.group.classes
    ids = np.unique(cp.class_of[S.indices])
    ids = ids[ids != 0]
    return int(cp.class_sizes[ids].min()) if len(ids) else 0


@dataclass
class BigSetResult:
    S: ElementSet
    conjugators: list[int]
    X: ElementSet
    minclass_ss: int

    @property
    def m(self) -> int:
        return len(self.conjugators)

    @property
    def exact(self) -> bool:
        return self.X.card == self.S.card**self.m

    @property
    def bound_holds(self) -> bool:
        # |X| >= sqrt(minclass(SS^-1, G)) / |S|, squared to stay in integers
        return (self.X.card * self.S.card) ** 2 >= self.minclass_ss

    @property
    def lower_bound(self) -> float:
        return math.sqrt(self.minclass_ss) / self.S.card


def greedy_big_set(S: ElementSet) -> BigSetResult:
    """Grow ``X = S^{h_1} ... S^{h_m}`` while products stay collision free.

    At each step the first ``g`` (index order) with
    ``X^-1 X  ∩  g S S^-1 g^-1 = {1}`` is taken and ``X <- X g S g^-1``.
    The recorded exponent is ``h = g^-1``; the first one is the identity.
    """
    G = S.group
    if S.card < 2:
        raise ValueError("need |S| >= 2")
    diffs = product(S, inverse(S))
    z = diffs.indices[diffs.indices != 0]
    X = S
    hs = [0]
    while X.card * S.card <= G.order:
        D = product(inverse(X), X).mask
        found = None
        step = max(1, CHUNK // max(1, len(z)))
        for start in range(0, G.order, step):
            g = np.arange(start, min(G.order, start + step))
            hit = D[G.conj(z[None, :], G.inv[g][:, None])].any(axis=1)
            ok = np.flatnonzero(~hit)
            if len(ok):
                found = int(g[ok[0]])
                break
        if found is None:
            break
        h = int(G.inv[found])
        X = product(X, conjugate(S, h))
        hs.append(h)
    return BigSetResult(S, hs, X, minclass_of(diffs))


def gowers_threshold(order: int, k: int) -> int:
    """Smallest integer ``s`` with ``s >= order / k^(1/3)``, i.e. ``s^3 k >= order^3``."""
    s = int(order / k ** (1 / 3))
    while s**3 * k < order**3:
        s += 1
    while s > 0 and (s - 1) ** 3 * k >= order**3:
        s -= 1
    return s


# Alt(5) = PSL2(4) and Alt(6) = PSL2(9); their degree bounds carry over.
ISOMORPHIC_MINDEG = {("Alt", 5): 2, ("Alt", 6): 3}


def group_mindeg(G: IndexedGroup) -> int | None:
    k = invariants(G).mindeg_lb
    if k is None:
        k = ISOMORPHIC_MINDEG.get((G.spec.family.value, G.spec.param))
    return k


@dataclass(frozen=True)
class GowersResult:
    k: int
    threshold: int
    applies: bool
    cube_full: bool

    @property
    def ok(self) -> bool:
        return self.cube_full or not self.applies


def gowers_check(S: ElementSet, k: int | None = None) -> GowersResult:
    """If ``|S| >= |G| / k^(1/3)`` then ``S^3 = G``; ``k`` is a mindeg lower bound."""
    G = S.group
    if k is None:
        k = group_mindeg(G)
    if k is None:
        raise ValueError(f"no mindeg lower bound known for {G.name}")
    thr = gowers_threshold(G.order, k)
    applies = S.card >= thr
    full = cube_is_full(S) if applies else False
    res = GowersResult(k, thr, applies, full)
    if applies and not full:
        raise GrowthError(f"{G.name}: |S|={S.card} >= {thr} but S^3 != G")
    return res


# -- decomposition --------------------------------------------------------------


@dataclass
class DecompositionCertificate:
    """``G = S^{g_1} S^{g_2} ... S^{g_N}`` with explicit exponents."""

    spec: GroupSpec
    S: list[int]
    s_digest: str
    conjugators: list[int]
    u: int = 0
    x: int = 0
    phases: list[dict] = field(default_factory=list)
    bigset_m: int = 1
    doublings: int = 0
    verified: bool | None = None

    @property
    def N(self) -> int:
        return len(self.conjugators)

    @property
    def expected_length(self) -> int:
        """Length predicted by the construction: ``3 * m * 2^D`` (1 when ``S = G``)."""
        if not self.phases:
            return 1
        return 3 * self.bigset_m * 2**self.doublings

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "S": list(self.S),
            "s_digest": self.s_digest,
            "u": self.u,
            "x": self.x,
            "conjugators": list(self.conjugators),
            "N": self.N,
            "bigset_m": self.bigset_m,
            "doublings": self.doublings,
            "phases": self.phases,
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "DecompositionCertificate":
        return cls(
            spec=GroupSpec.from_dict(d["spec"]),
            S=list(d["S"]),
            s_digest=d["s_digest"],
            u=d["u"],
            x=d["x"],
            conjugators=list(d["conjugators"]),
            phases=list(d.get("phases", [])),
            bigset_m=d.get("bigset_m", 1),
            doublings=d.get("doublings", 0),
            verified=d.get("verified"),
        )


def normalize_certificate(
    S: ElementSet, translation: int, t_conjugators: list[int], **meta
) -> DecompositionCertificate:
    """Rewrite a product of conjugates of ``T = S t`` as conjugates of ``S``.

    ``T^h = S^h t^h``; constants are pushed to the right with
    ``c S^h = S^(h c^-1) c``, and the trailing constant is dropped because
    the product is all of ``G``.
    """
    G = S.group
    c = 0
    out = []
    for h in t_conjugators:
        out.append(int(G.mul(h, G.inv[c])))
        c = int(G.mul(c, G.conj(translation, h)))
    cert = DecompositionCertificate(spec=G.spec, S=S.to_list(), s_digest=S.digest(), conjugators=out, **meta)
    if not verify_certificate(cert, group=G):
        raise GrowthError("normalised certificate does not cover G")
    cert.verified = True
    return cert


def verify_certificate(cert: DecompositionCertificate, group: IndexedGroup | None = None) -> bool:
    """Recompute the product of the listed conjugates of ``S`` and compare with ``G``."""
    G = group if group is not None else get_group(cert.spec)
    S = ElementSet.from_indices(G, cert.S)
    if S.digest() != cert.s_digest or not cert.conjugators:
        return False
    P = product_many(*(conjugate(S, g) for g in cert.conjugators))
    return is_full(P)


def doubling_decomposition(
    S: ElementSet,
    search: Literal["exhaustive", "sampled"] = "exhaustive",
    samples: int = 64,
    seed: int = 0,
) -> DecompositionCertificate:
    """Write ``G`` as a product of conjugates of ``S``.

    1. translate ``S`` to a generating set ``T = S t`` (skipped if ``S`` generates);
    2. if ``|T|^4 < minclass(G)``, replace ``T`` by a greedy big set;
    3. while ``P^3 != G``: ``P <- P P^g`` with ``g`` maximising ``|P P^g|``;
    4. ``G = P P P``.

    ``search="sampled"`` draws ``samples`` seeded candidate conjugators per
    step instead of scanning the whole group (not used for acceptance runs).
    """
    G = S.group
    if S.card < 2:
        raise ValueError("need |S| >= 2")
    _require_simple(G)
    if is_full(S):
        return normalize_certificate(S, 0, [0], u=0, x=0)

    phases: list[dict] = []
    if generates(S):
        T, u, x, t = S, 0, 0, 0
    else:
        T, u, x = translate_to_generating(S)
        t = int(G.mul(G.inv[u], x))
        phases.append({"phase": "translate", "u": u, "x": x})

    minclass = G.classes.minclass
    P, L = T, [0]
    if T.card**4 < minclass:
        big = greedy_big_set(T)
        P, L = big.X, list(big.conjugators)
        phases.append({"phase": "big_set", "m": big.m, "size": P.card})
    bigset_m = len(L)

    rng = np.random.default_rng(seed)
    cap = 2 * math.ceil(math.log2(G.order))
    doublings = 0
    while not cube_is_full(P):
        if doublings >= cap:
            raise GrowthError(f"{G.name}: doubling cap {cap} exceeded")
        if search == "sampled":
            cand = np.sort(rng.choice(G.order, size=min(samples, G.order), replace=False))
            g, size = best_conjugate_growth(P, cand)
            if size <= P.card:
                g, size = best_conjugate_growth(P)
        else:
            g, size = best_conjugate_growth(P)
        if size <= P.card:
            raise GrowthError(f"{G.name}: no conjugate grows P (|P|={P.card})")
        phases.append({"phase": "doubling", "g": g, "size_before": P.card, "size_after": size})
        P = product(P, conjugate(P, g))
        L = L + [int(G.mul(h, g)) for h in L]
        doublings += 1
    phases.append({"phase": "cube", "size": P.card})
    return normalize_certificate(S, t, L * 3, u=u, x=x, phases=phases, bigset_m=bigset_m, doublings=doublings)
