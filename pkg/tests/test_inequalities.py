from fractions import Fraction

import numpy as np
import pytest
from conftest import element, random_set
from hypothesis import given, settings
from hypothesis import strategies as st

from simplegrowth import get_group
from simplegrowth.inequalities import (
    HypothesisError,
    WordPattern,
    check_petridis2,
    check_petridis_tripling,
    check_plun_j,
    check_plunnecke,
    check_pr_estimates,
    check_prop_top,
    check_ruzsa,
    check_skew_chain,
    check_tao,
    conj2_implies_conj3_demo,
    min_ratio_subset,
    plunnecke_report,
    skew_K,
)
from simplegrowth.growth import doubling_decomposition
from simplegrowth.reports import Report, fmt
from simplegrowth.setalg import ElementSet, closure, power

ALT5 = get_group("Alt(5)")


def cls(G, *ids):
    return ElementSet(G, np.isin(G.classes.class_of, ids))


def test_ruzsa_trivial(alt5, psl27, rng):
    one = ElementSet.identity(alt5)
    r = check_ruzsa(one, one, one)
    assert r.lhs == 1 and r.rhs == 1 and r.passed
    for _ in range(20):
        S = random_set(psl27, rng, 2, 30)
        assert check_ruzsa(S, S, S).passed
        U = random_set(psl27, rng, 1, 20)
        V, W = (ElementSet.from_indices(psl27, [int(rng.integers(168))]) for _ in range(2))
        r = check_ruzsa(U, V, W)
        assert r.extra["VW^-1"] == 1 and r.passed


def test_ruzsa_matches_naive(alt5, naive_alt5, rng):
    U, V, W = (random_set(alt5, rng, 1, 10) for _ in range(3))
    r = check_ruzsa(U, V, W)
    n = naive_alt5
    vw = len(n.prod(V.to_list(), n.inverse(W.to_list())))
    uv = len(n.prod(U.to_list(), n.inverse(V.to_list())))
    uw = len(n.prod(U.to_list(), n.inverse(W.to_list())))
    assert r.lhs == Fraction(vw, U.card) and r.rhs == Fraction(uv * uw, U.card**2)


def test_petridis_tripling_subgroup(alt5):
    H = closure(ElementSet.from_indices(alt5, [1]))
    r = check_petridis_tripling(H)
    assert r.extra["J"] == "1" and r.extra["K"] == "1" and r.lhs == H.card


def test_petridis_tripling_pair(alt5):
    a = element(alt5, [1, 2, 3, 4, 0])
    r = check_petridis_tripling(ElementSet.from_indices(alt5, [0, a]))
    # S^2 = {1,a,a^2}; S a S = {a,a^2,a^3}
    assert r.lhs == 4
    assert r.extra["J"] == "3/2" and r.extra["K"] == "3/2"
    assert r.rhs == Fraction(3, 2) ** 8 * 2 and r.passed


def test_petridis_tripling_random(psl27, naive_psl27, rng):
    for _ in range(20):
        S = random_set(psl27, rng, 4, 40)
        r = check_petridis_tripling(S)
        assert r.passed
        s = S.to_list()
        K = max(len(naive_psl27.prod(s, [g], s)) for g in s)
        assert r.extra["K"] == fmt(Fraction(K, S.card))
        assert r.lhs == len(naive_psl27.power(s, 3))


def test_min_ratio_matches_brute_force(alt5, naive_alt5, rng):
    B = cls(alt5, 4)
    for _ in range(5):
        A = random_set(alt5, rng, 2, 8)
        X = min_ratio_subset(A, B)
        (num, den), winners = naive_alt5.min_ratio(A.to_list(), B.to_list())
        assert set(X.to_list()) in winners
        assert len(naive_alt5.prod(X.to_list(), B.to_list())) * den == num * X.card
        assert X.card == max(len(w) for w in winners)


def test_min_ratio_tie_break_is_smallest_mask(alt5, naive_alt5):
    # B = {1}: every nonempty subset has ratio 1; the largest is A itself
    A = ElementSet.from_indices(alt5, [3, 9, 14])
    assert min_ratio_subset(A, ElementSet.identity(alt5)) == A
    # B = G: ratio 60/|Z| is minimised by Z = A
    assert min_ratio_subset(A, ElementSet.full(alt5)) == A


def test_min_ratio_subgroup_absorbs(alt5):
    H = closure(ElementSet.from_indices(alt5, [2]))
    B = ElementSet.from_indices(alt5, [0, 2])
    assert min_ratio_subset(H, B) == H


def test_min_ratio_singleton_and_cap(alt5):
    A = ElementSet.from_indices(alt5, [7])
    assert min_ratio_subset(A, cls(alt5, 1)) == A
    with pytest.raises(HypothesisError):
        min_ratio_subset(ElementSet.from_indices(alt5, range(15)), A)


def test_petridis2(alt5, rng):
    B = cls(alt5, 1)
    for _ in range(10):
        A = random_set(alt5, rng, 2, 8)
        X = min_ratio_subset(A, B)
        C = random_set(alt5, rng, 1, 10)
        assert check_petridis2(C, X, B).passed
    r = check_petridis2(ElementSet.identity(alt5), X, B)
    assert r.lhs == r.rhs
    H = closure(ElementSet.from_indices(alt5, [1]))
    r = check_petridis2(random_set(alt5, rng, 3, 6), H, H)
    assert r.passed and r.lhs == r.extra["CX"]


def test_petridis2_requires_minimiser(alt5):
    X = ElementSet.from_indices(alt5, [0, 1, 2])
    B = ElementSet.from_indices(alt5, [0, 1])
    if min_ratio_subset(X, B) == X:
        pytest.skip("X happens to be a minimiser")
    with pytest.raises(HypothesisError):
        check_petridis2(X, X, B)


def test_plunnecke_normal_five_cycles(alt5, rng):
    C = cls(alt5, 2)
    for _ in range(3):
        A = ElementSet.from_indices(alt5, rng.choice(C.indices, size=8, replace=False))
        for r in check_plunnecke(A, C, 4):
            assert r.passed


def test_plunnecke_trivial_b(alt5, rng):
    A = random_set(alt5, rng, 2, 8)
    r = plunnecke_report(A, ElementSet.identity(alt5), 3)
    assert r.extra["K"] == "1" and r.lhs == r.rhs


def test_plunnecke_modes(alt5, z12, rng):
    A, B = random_set(z12, rng, 2, 6), random_set(z12, rng, 1, 4)
    assert all(r.passed for r in check_plunnecke(A, B, 4, mode="abelian"))
    with pytest.raises(HypothesisError):
        check_plunnecke(random_set(alt5, rng, 2, 4), random_set(alt5, rng, 2, 3), 1, mode="abelian")
    with pytest.raises(HypothesisError):
        plunnecke_report(ElementSet.identity(alt5), ElementSet.from_indices(alt5, [1]), 1)
    with pytest.raises(ValueError):
        plunnecke_report(A, B, 1, mode="weird")


def test_pr_estimates(alt5, rng):
    inv_class = cls(alt5, 4)
    A = random_set(alt5, rng, 10, 10)
    assert check_pr_estimates(A, inv_class, 1, 1).passed
    r = check_pr_estimates(A, ElementSet.identity(alt5), 1, 2)
    assert r.lhs == 1
    with pytest.raises(HypothesisError):
        check_pr_estimates(A, inv_class, 0, 1)


def test_pr_estimates_abelian_control():
    Z10 = get_group("Cyclic(10)")
    rng = np.random.default_rng(0)
    for _ in range(10):
        A, B = random_set(Z10, rng, 1, 5), random_set(Z10, rng, 1, 3)
        assert check_pr_estimates(A, B, 2, 1).passed


def test_plun_j(alt5, z12, rng):
    C = cls(alt5, 2)
    r = check_plun_j(C, C, 1, 3)
    assert r.passed and r.lhs == power(C, 3).card
    for _ in range(10):
        A, B = random_set(z12, rng, 1, 6), random_set(z12, rng, 1, 3)
        assert check_plun_j(A, B, 2, 4).passed
    # j = m with 1 in A: |B^m| <= |A B^m|
    A = ElementSet.identity(alt5) | random_set(alt5, rng, 2, 5)
    r = check_plun_j(A, C, 2, 2)
    assert r.passed and r.extra["K_below_one"] is False
    with pytest.raises(HypothesisError):
        check_plun_j(A, C, 3, 2)


def test_skew_K(alt5, psl27, naive_psl27, rng):
    assert skew_K(ElementSet.from_indices(alt5, [5])) == 1
    C = cls(alt5, 1)
    assert skew_K(C) == Fraction(power(C, 2).card, C.card)
    S = random_set(psl27, rng, 2, 6)
    s = S.to_list()
    want = max(len(naive_psl27.prod(s, naive_psl27.conj(s, g))) for g in range(168))
    assert skew_K(S) == Fraction(want, S.card)


def test_skew_chain(alt5, psl27, rng):
    S = random_set(alt5, rng, 2, 10)
    r = check_skew_chain(S, WordPattern.of([(7, False)]))
    assert r.lhs == r.rhs == S.card
    for _ in range(10):
        pat = WordPattern.of([(int(rng.integers(60)), bool(rng.integers(2))) for _ in range(3)])
        r = check_tao(random_set(alt5, rng, 2, 12), pat)
        assert r.kind == "tao" and r.passed
    for _ in range(5):
        pat = WordPattern.of([(int(rng.integers(168)), bool(rng.integers(2))) for _ in range(5)])
        r = check_skew_chain(random_set(psl27, rng, 2, 20), pat)
        assert r.kind == "skew_chain" and r.passed
    with pytest.raises(HypothesisError):
        check_tao(S, WordPattern.of([(0, False)]))


def test_word_pattern_round_trip():
    pat = WordPattern.of([(3, True), (0, False)])
    assert pat.to_list() == [[3, "S^-1"], [0, "S"]]
    assert WordPattern.from_list(pat.to_list()) == pat
    with pytest.raises(ValueError):
        WordPattern.of([])


def test_prop_top(alt5, rng):
    for _ in range(10):
        pat = WordPattern.of([(int(rng.integers(60)), bool(rng.integers(2))) for _ in range(3)])
        assert check_prop_top(random_set(alt5, rng, 1, 10), random_set(alt5, rng, 2, 10), pat).passed
    H = closure(ElementSet.from_indices(alt5, [1]))
    pat = WordPattern.of([(5, False), (9, False), (13, False)])
    r = check_prop_top(ElementSet.identity(alt5), H, pat)
    assert r.passed and Fraction(r.extra["K"]) > 1


def test_conj2_conj3(alt5, rng):
    full = conj2_implies_conj3_demo(ElementSet.full(alt5), [0])
    assert full.extra["branch"] == "degenerate" and full.passed
    S = random_set(alt5, rng, 2, 4)
    cert = doubling_decomposition(S)
    r = conj2_implies_conj3_demo(S, cert.conjugators)
    assert r.passed and r.extra["branch"] == "chain"
    C = cls(alt5, 2)
    r = conj2_implies_conj3_demo(C, [0, 0, 0])
    assert r.extra["branch"] == "normal" and r.passed
    with pytest.raises(HypothesisError):
        conj2_implies_conj3_demo(S, [0])


def test_report_round_trip(alt5):
    r = check_petridis_tripling(ElementSet.from_indices(alt5, [0, 1, 2]))
    d = r.to_dict()
    back = Report.from_dict(d)
    assert back.lhs == r.lhs and back.rhs == r.rhs and back.passed == d["pass"]
    assert d["slack"] == fmt(Fraction(r.rhs) - r.lhs)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 59), min_size=1, max_size=8), st.sampled_from([1, 2, 3, 4]), st.integers(1, 4))
def test_plunnecke_normal_property(a, cid, m):
    A = ElementSet.from_indices(ALT5, a)
    assert plunnecke_report(A, cls(ALT5, cid), m).passed


@settings(max_examples=40, deadline=None)
@given(*(st.lists(st.integers(0, 59), min_size=1, max_size=12) for _ in range(3)))
def test_ruzsa_property(u, v, w):
    assert check_ruzsa(*(ElementSet.from_indices(ALT5, x) for x in (u, v, w))).passed
