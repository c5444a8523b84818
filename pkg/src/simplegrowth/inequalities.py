"""Exact instance checks of product-set inequalities.

Each ``check_*`` function computes both sides of one inequality on concrete
sets and returns a :class:`~simplegrowth.reports.Report`. All comparisons are
made between integers or :class:`~fractions.Fraction` values; where an
inequality has a fractional exponent both sides are raised to clear it, and
``extra["form"]`` says how.

The inequalities are theorems, so every report should pass; a failure points
at a bug in the set arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .reports import Report
from .setalg import (
    ElementSet,
    conjugate,
    conjugate_growth_sizes,
    inverse,
    is_normal,
    middle_product_sizes,
    power,
    product,
    product_many,
)

SUBSET_CAP = 14


class HypothesisError(ValueError):
    """The inputs do not satisfy the hypothesis of the inequality."""


def _ids(S: ElementSet) -> list[int]:
    return S.to_list()


# -- Ruzsa / Petridis -----------------------------------------------------------


def check_ruzsa(U: ElementSet, V: ElementSet, W: ElementSet) -> Report:
    """``|V W^-1| |U| <= |U V^-1| |U W^-1|``."""
    if U.card == 0:
        raise HypothesisError("U must be nonempty")
    vw = product(V, inverse(W)).card
    uv = product(U, inverse(V)).card
    uw = product(U, inverse(W)).card
    return Report(
        "ruzsa",
        U.group.name,
        {"U": _ids(U), "V": _ids(V), "W": _ids(W)},
        lhs=Fraction(vw, U.card),
        rhs=Fraction(uv, U.card) * Fraction(uw, U.card),
        extra={"VW^-1": vw, "UV^-1": uv, "UW^-1": uw},
    )


def check_petridis_tripling(S: ElementSet) -> Report:
    """``|S^3| <= J^7 K |S|`` with ``J = |S^2|/|S|`` and ``K = max_{g in S} |SgS|/|S|``."""
    if S.card == 0:
        raise HypothesisError("S must be nonempty")
    n = S.card
    s2 = product(S, S)
    s3 = product(s2, S).card
    sgs = int(middle_product_sizes(S, S.indices).max())
    J = Fraction(s2.card, n)
    K = Fraction(sgs, n)
    return Report(
        "petridis_tripling",
        S.group.name,
        {"S": _ids(S)},
        lhs=s3,
        rhs=J**7 * K * n,
        extra={"J": str(J), "K": str(K), "S^2": s2.card},
    )


def min_ratio_subset(A: ElementSet, B: ElementSet, cap: int = SUBSET_CAP) -> ElementSet:
    """The nonempty ``X ⊆ A`` minimising ``|XB| / |X|``, by exhaustive search.

    Ties go to the larger ``|X|``, then to the smaller bitmask, where bit ``i``
    stands for the ``i``-th smallest element of ``A``.

    All ``2^|A|`` unions ``ZB`` are built at once as packed bit rows, each
    from a smaller one by a single OR.
    """
    if A.card == 0 or B.card == 0:
        raise HypothesisError("A and B must be nonempty")
    if A.card > cap:
        raise HypothesisError(f"|A| = {A.card} exceeds the subset cap {cap}")
    G = A.group
    a = A.indices
    k = len(a)
    rows = np.zeros((k, G.order), dtype=bool)
    prods = G.mul(a[:, None], B.indices[None, :])
    rows[np.arange(k)[:, None], prods] = True
    packed = np.packbits(rows, axis=1, bitorder="little")
    pad = (-packed.shape[1]) % 8
    packed = np.pad(packed, ((0, 0), (0, pad))).view(np.uint64)
    unions = np.zeros((1 << k, packed.shape[1]), dtype=np.uint64)
    for i in range(k):
        lo = 1 << i
        np.bitwise_or(unions[:lo], packed[i], out=unions[lo : 2 * lo])
    counts = np.bitwise_count(unions).sum(axis=1, dtype=np.int64)
    masks = np.arange(1 << k)
    sizes = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    lcm = math.lcm(*range(1, k + 1))
    key = counts[1:] * (lcm // sizes[1:])
    best = key.min()
    cand = np.flatnonzero(key == best) + 1
    cand = cand[sizes[cand] == sizes[cand].max()]
    chosen = int(cand.min())
    return ElementSet.from_indices(G, [a[i] for i in range(k) if chosen >> i & 1])


def _is_min_ratio(X: ElementSet, B: ElementSet) -> bool:
    Y = min_ratio_subset(X, B, cap=max(SUBSET_CAP, X.card))
    return product(Y, B).card * X.card == product(X, B).card * Y.card


def check_petridis2(C: ElementSet, X: ElementSet, B: ElementSet) -> Report:
    """``|CXB| |X| <= |CX| |XB|`` when ``X`` minimises ``|ZB|/|Z|`` over ``Z ⊆ X``."""
    if X.card == 0:
        raise HypothesisError("X must be nonempty")
    if X.card <= SUBSET_CAP and not _is_min_ratio(X, B):
        raise HypothesisError("X is not a ratio minimiser for B")
    cx = product(C, X)
    xb = product(X, B).card
    cxb = product(cx, B).card
    return Report(
        "petridis2",
        X.group.name,
        {"C": _ids(C), "X": _ids(X), "B": _ids(B)},
        lhs=cxb,
        rhs=Fraction(cx.card * xb, X.card),
        extra={"CX": cx.card, "XB": xb},
    )


# -- Plunnecke-type estimates -----------------------------------------------------


def _check_mode(A: ElementSet, B: ElementSet, mode: str) -> None:
    if mode == "abelian":
        if not A.group.spec.is_abelian:
            raise HypothesisError(f"abelian mode needs an abelian group, not {A.group.name}")
    elif mode == "normal":
        if not is_normal(B):
            raise HypothesisError("B is not a normal subset")
    else:
        raise ValueError(f"unknown mode {mode!r}")


def plunnecke_report(A: ElementSet, B: ElementSet, m: int, mode: str = "normal", X: ElementSet | None = None) -> Report:
    """``|X B^m| <= K^m |X|`` with ``K = |AB|/|A|`` and ``X`` the ratio minimiser."""
    _check_mode(A, B, mode)
    if m < 1:
        raise HypothesisError("m must be positive")
    K = Fraction(product(A, B).card, A.card)
    if X is None:
        X = min_ratio_subset(A, B)
    lhs = product(X, power(B, m)).card
    return Report(
        f"plunnecke_{mode}",
        A.group.name,
        {"A": _ids(A), "B": _ids(B), "m": m, "mode": mode},
        lhs=lhs,
        rhs=K**m * X.card,
        extra={"K": str(K), "X": _ids(X)},
    )


def check_plunnecke(A: ElementSet, B: ElementSet, m: int, mode: str = "normal") -> list[Report]:
    """One report per power ``1..m``, all sharing the same minimiser ``X``."""
    _check_mode(A, B, mode)
    X = min_ratio_subset(A, B)
    return [plunnecke_report(A, B, i, mode, X=X) for i in range(1, m + 1)]


def check_pr_estimates(A: ElementSet, B: ElementSet, m: int, n: int) -> Report:
    """``|B^m B^-n| <= K^(m+n) |A|`` for normal ``B`` with ``K = |AB|/|A|``."""
    if m < 1 or n < 1:
        raise HypothesisError("m and n must be positive")
    if A.card == 0:
        raise HypothesisError("A must be nonempty")
    if not is_normal(B):
        raise HypothesisError("B is not a normal subset")
    K = Fraction(product(A, B).card, A.card)
    lhs = product(power(B, m), power(inverse(B), n)).card
    return Report(
        "pr_estimates",
        A.group.name,
        {"A": _ids(A), "B": _ids(B), "m": m, "n": n},
        lhs=lhs,
        rhs=K ** (m + n) * A.card,
        extra={"K": str(K)},
    )


def check_plun_j(A: ElementSet, B: ElementSet, j: int, m: int) -> Report:
    """``|B^m| <= K^(m/j) |A|`` with ``K = |A B^j| / |A|``, compared as ``|B^m|^j <= K^m |A|^j``."""
    if not (m >= j >= 1):
        raise HypothesisError("need m >= j >= 1")
    if A.card == 0:
        raise HypothesisError("A must be nonempty")
    if not is_normal(B):
        raise HypothesisError("B is not a normal subset")
    K = Fraction(product(A, power(B, j)).card, A.card)
    bm = power(B, m).card
    return Report(
        "plun_j",
        A.group.name,
        {"A": _ids(A), "B": _ids(B), "j": j, "m": m},
        lhs=bm**j,
        rhs=K**m * A.card**j,
        extra={"K": str(K), "B^m": bm, "form": "both sides raised to the power j", "K_below_one": K < 1},
    )


# -- skew doubling ----------------------------------------------------------------


def skew_K(S: ElementSet) -> Fraction:
    """``max_g |S S^g| / |S|`` over every ``g`` in the group."""
    if S.card == 0:
        raise HypothesisError("S must be nonempty")
    return Fraction(int(conjugate_growth_sizes(S).max()), S.card)


@dataclass(frozen=True)
class WordPattern:
    """Factors ``S_i = (S or S^-1)^{g_i}`` of a product."""

    terms: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        if len(self.terms) < 1:
            raise ValueError("pattern must have at least one factor")

    @classmethod
    def of(cls, terms: Sequence[tuple[int, bool]]) -> "WordPattern":
        return cls(tuple((int(g), bool(inv)) for g, inv in terms))

    def __len__(self) -> int:
        return len(self.terms)

    def to_list(self) -> list[list]:
        return [[g, "S^-1" if inv else "S"] for g, inv in self.terms]

    @classmethod
    def from_list(cls, items) -> "WordPattern":
        return cls.of([(g, o == "S^-1") for g, o in items])


def oriented_conjugate(S: ElementSet, g: int, inverted: bool) -> ElementSet:
    return conjugate(inverse(S) if inverted else S, g)


def check_skew_chain(S: ElementSet, pattern: WordPattern, K: Fraction | None = None) -> Report:
    """``|S_1 ... S_m| <= K^(14(m-1)) |S|`` with ``K`` the skew doubling constant."""
    if S.card == 0:
        raise HypothesisError("S must be nonempty")
    if K is None:
        K = skew_K(S)
    m = len(pattern)
    P = product_many(*(oriented_conjugate(S, g, inv) for g, inv in pattern.terms))
    return Report(
        "skew_chain",
        S.group.name,
        {"S": _ids(S), "pattern": pattern.to_list()},
        lhs=P.card,
        rhs=K ** (14 * (m - 1)) * S.card,
        extra={"K": str(K), "m": m},
    )


def check_tao(S: ElementSet, pattern: WordPattern, K: Fraction | None = None) -> Report:
    if len(pattern) != 3:
        raise HypothesisError("the three-factor case needs a pattern of length 3")
    r = check_skew_chain(S, pattern, K)
    r.kind = "tao"
    return r


def check_prop_top(A: ElementSet, B: ElementSet, factors: WordPattern, K: Fraction | None = None) -> Report:
    """``|A B_1 B_2| <= K^14 |A B_3|`` for oriented conjugates ``B_1, B_2, B_3`` of ``B``."""
    if A.card == 0 or B.card == 0:
        raise HypothesisError("A and B must be nonempty")
    if len(factors) != 3:
        raise HypothesisError("need exactly three factors B_1, B_2, B_3")
    if K is None:
        K = skew_K(B)
    b1, b2, b3 = (oriented_conjugate(B, g, inv) for g, inv in factors.terms)
    lhs = product(product(A, b1), b2).card
    ab3 = product(A, b3).card
    return Report(
        "prop_top",
        A.group.name,
        {"A": _ids(A), "B": _ids(B), "pattern": factors.to_list()},
        lhs=lhs,
        rhs=K**14 * ab3,
        extra={"K": str(K), "AB_3": ab3},
    )


def conj2_implies_conj3_demo(S: ElementSet, conjugators: Sequence[int]) -> Report:
    """Skew doubling applied to a decomposition ``G = S^{g_1} ... S^{g_N}``.

    Checks ``|G|/|S| <= K^(14(N-1))`` with ``K = max_g |SS^g|/|S|``. The
    implied exponent ``log((|G|/|S|)^(1/(14(N-1))))/log|S|`` is reported next
    to the measured one. ``N = 1`` (``S = G``) is degenerate and reported as
    trivially satisfied.
    """
    G = S.group
    N = len(conjugators)
    P = product_many(*(conjugate(S, g) for g in conjugators))
    if P.card != G.order:
        raise HypothesisError("the conjugators do not cover G")
    K = skew_K(S)
    best = K * S.card
    extra = {"N": N, "K": str(K), "measured_exponent": math.log(best) / math.log(S.card)}
    if N == 1:
        extra["branch"] = "degenerate"
        rhs: Fraction | int = Fraction(G.order, S.card)
    else:
        rhs = K ** (14 * (N - 1))
        implied = (math.log(G.order / S.card) / (14 * (N - 1))) / math.log(S.card) + 1
        extra["branch"] = "normal" if is_normal(S) else "chain"
        extra["implied_exponent"] = implied
    return Report(
        "conj2_conj3",
        G.name,
        {"S": _ids(S), "conjugators": [int(g) for g in conjugators]},
        lhs=Fraction(G.order, S.card),
        rhs=rhs,
        extra=extra,
    )
