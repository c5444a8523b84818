"""Normal subsets (unions of conjugacy classes): covering numbers and growth."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .groups import IndexedGroup
from .growth import best_conjugate_growth
from .inequalities import HypothesisError
from .reports import Report
from .setalg import ElementSet, cube_is_full, product

# exhaustive sweeps only below this many nontrivial classes
SWEEP_CLASS_LIMIT = 12


class CoverError(RuntimeError):
    pass


@dataclass(frozen=True)
class NormalSet:
    class_ids: tuple[int, ...]
    view: ElementSet

    @classmethod
    def from_classes(cls, G: IndexedGroup, class_ids) -> "NormalSet":
        ids = tuple(sorted(int(c) for c in set(class_ids)))
        mask = np.isin(G.classes.class_of, ids)
        return cls(ids, ElementSet(G, mask))

    @property
    def contains_identity(self) -> bool:
        return 0 in self.class_ids

    @property
    def card(self) -> int:
        return self.view.card


def class_ids_of(S: ElementSet) -> tuple[int, ...] | None:
    """The class ids making up ``S``, or ``None`` if ``S`` is not a union of classes."""
    cp = S.group.classes
    ids = np.unique(cp.class_of[S.indices])
    if int(cp.class_sizes[ids].sum()) != S.card:
        return None
    return tuple(int(i) for i in ids)


def enumerate_normal_subsets(G: IndexedGroup, max_classes: int | None = None, include_identity: bool = False) -> list[NormalSet]:
    """All unions of at most ``max_classes`` nontrivial classes.

    With ``include_identity`` each union is also returned with the identity
    class added. The empty set and ``{1}`` are never returned.
    """
    nontrivial = list(range(1, G.classes.count))
    top = len(nontrivial) if max_classes is None else min(max_classes, len(nontrivial))
    out = []
    for r in range(1, top + 1):
        for ids in combinations(nontrivial, r):
            out.append(NormalSet.from_classes(G, ids))
            if include_identity:
                out.append(NormalSet.from_classes(G, (0,) + ids))
    return out


def sample_normal_subsets(G: IndexedGroup, count: int, rng: np.random.Generator, include_identity: bool = False) -> list[NormalSet]:
    """Seeded random unions of nontrivial classes, for groups too big to sweep."""
    n = G.classes.count - 1
    out = []
    for _ in range(count):
        pick = rng.random(n) < 0.5
        if not pick.any():
            pick[rng.integers(n)] = True
        ids = [i + 1 for i in np.flatnonzero(pick)]
        if include_identity and rng.random() < 0.5:
            ids = [0] + ids
        out.append(NormalSet.from_classes(G, ids))
    return out


@dataclass(frozen=True)
class CoveringReport:
    normal_set: NormalSet
    m: int
    size: int
    square: int
    order: int

    @property
    def a_ratio(self) -> float:
        """``m* log|S| / log|G|``: the empirical constant in ``m <= a log|G|/log|S|``."""
        return self.m * math.log(self.size) / math.log(self.order)

    @property
    def growth_exponent(self) -> float:
        return math.log(self.square) / math.log(self.size)

    def to_dict(self) -> dict:
        return {
            "class_ids": list(self.normal_set.class_ids),
            "size": self.size,
            "square": self.square,
            "m": self.m,
            "a_ratio": self.a_ratio,
            "growth_exponent": self.growth_exponent,
        }


def covering_number(S: NormalSet | ElementSet, cap: int | None = None) -> CoveringReport:
    """Least ``m`` with ``S^m = G``."""
    if isinstance(S, ElementSet):
        ids = class_ids_of(S)
        if ids is None:
            raise HypothesisError("S is not a normal subset")
        S = NormalSet.from_classes(S.group, ids)
    view = S.view
    G = view.group
    if view.card == 0 or S.class_ids == (0,):
        raise HypothesisError("covering needs a nontrivial normal subset")
    if cap is None:
        cap = 2 * math.ceil(math.log2(G.order)) + 4
    P, m = view, 1
    square = product(view, view).card
    while P.card < G.order:
        if m >= cap:
            raise CoverError(f"{G.name}: S^{cap} != G for classes {S.class_ids}")
        P = product(P, view)
        m += 1
    return CoveringReport(S, m, view.card, square, G.order)


def power_by_composition(S: ElementSet, m: int) -> set[int]:
    """``S^m`` computed with plain Python sets and raw permutation composition.

    Shares no code with the vectorised kernels; used to re-verify covering numbers.
    """
    G = S.group
    perms = [tuple(p) for p in G.perms.tolist()]
    where = {p: i for i, p in enumerate(perms)}
    members = [perms[i] for i in S.to_list()]
    acc = set(members)
    for _ in range(m - 1):
        acc = {tuple(b[x] for x in a) for a in acc for b in members}
    return {where[p] for p in acc}


def verify_covering(rep: CoveringReport) -> bool:
    S = rep.normal_set.view
    n = S.group.order
    full = len(power_by_composition(S, rep.m)) == n
    below = rep.m == 1 or len(power_by_composition(S, rep.m - 1)) < n
    return full and below


def check_normal_growth(S: NormalSet, epsilon: Fraction, b: int, cover: CoveringReport | None = None) -> Report:
    """``|S^2| >= |S|^(1+eps)`` or ``S^b = G``.

    With ``eps = p/q`` the growth side is tested as ``|S^2|^q >= |S|^(q+p)``.
    The report's ``lhs``/``rhs`` carry whichever side decided it.
    """
    eps = Fraction(epsilon)
    if cover is None:
        cover = covering_number(S)
    p, q = eps.numerator, eps.denominator
    grows = cover.square**q >= cover.size ** (q + p)
    inputs = {"classes": list(S.class_ids), "epsilon": str(eps), "b": b}
    extra = {"size": cover.size, "square": cover.square, "m": cover.m, "grows": grows}
    if grows or cover.m > b:
        lhs, rhs, rel = cover.square**q, cover.size ** (q + p), ">="
        extra["branch"] = "growth"
    else:
        lhs, rhs, rel = cover.m, b, "<="
        extra["branch"] = "covering"
    return Report("normal_growth", S.view.group.name, inputs, lhs=lhs, rhs=rhs, relation=rel, theorem=False, extra=extra)


def growth_frontier(covers: list[CoveringReport]) -> dict:
    """Per ``b``: the largest ``eps`` for which the growth-or-cover disjunction holds for all sets.

    ``eps_max(b) = min over sets with m* > b of (log|S^2|/log|S| - 1)``; it is
    ``None`` (unbounded) once every set satisfies ``S^b = G``.
    """
    b_max = max(c.m for c in covers)
    frontier = []
    for b in range(1, b_max + 1):
        rest = [c.growth_exponent - 1 for c in covers if c.m > b]
        frontier.append({"b": b, "eps_max": min(rest) if rest else None})
    a_emp = max(c.a_ratio for c in covers)
    return {"a_empirical": a_emp, "b_all_covered": b_max, "frontier": frontier}


def check_shalev(A: ElementSet, B: NormalSet, delta: Fraction, cover: CoveringReport | None = None) -> Report:
    """``|AB| >= |A| |B|^(delta/a)`` for ``|A| <= |G|^(1-delta)``, with ``a`` from ``B``'s covering number.

    With ``a = m* log|B| / log|G|`` the right side is ``|A| |G|^(delta/m*)``;
    for ``delta = p/q`` it is tested as ``(|AB|/|A|)^(q m*) >= |G|^p``.
    """
    G = A.group
    d = Fraction(delta)
    if not 0 < d < 1:
        raise HypothesisError("delta must lie in (0, 1)")
    if A.card == 0:
        raise HypothesisError("A must be nonempty")
    if B.card == G.order:
        raise HypothesisError("B = G is excluded")
    p, q = d.numerator, d.denominator
    if A.card**q > G.order ** (q - p):
        raise HypothesisError("|A| exceeds |G|^(1-delta)")
    if cover is None:
        cover = covering_number(B)
    K = Fraction(product(A, B.view).card, A.card)
    m = cover.m
    return Report(
        "shalev",
        G.name,
        {"A": A.to_list(), "classes": list(B.class_ids), "delta": str(d)},
        lhs=K ** (q * m),
        rhs=G.order**p,
        relation=">=",
        extra={"K": str(K), "m": m, "a_empirical": cover.a_ratio, "form": "both sides raised to the power q*m"},
    )


def check_shalev2(S: ElementSet, delta: Fraction) -> Report:
    """Some conjugate grows ``S`` whenever ``2 <= |S| <= |G|^(1-delta)``.

    Reports the best ``|S S^g|`` against ``|S| + 1`` (strict growth, guaranteed
    for simple groups) and the achieved exponent next to ``delta/10``.
    """
    G = S.group
    d = Fraction(delta)
    if S.card < 2:
        raise HypothesisError("need |S| >= 2")
    p, q = d.numerator, d.denominator
    if S.card**q > G.order ** (q - p):
        raise HypothesisError("|S| exceeds |G|^(1-delta)")
    g, size = best_conjugate_growth(S)
    return Report(
        "shalev2",
        G.name,
        {"S": S.to_list(), "delta": str(d)},
        lhs=size,
        rhs=S.card + 1,
        relation=">=",
        extra={
            "g": g,
            "exponent": math.log(size) / math.log(S.card),
            "delta_over_10": float(d) / 10,
            "cube_full": cube_is_full(S),
        },
    )
