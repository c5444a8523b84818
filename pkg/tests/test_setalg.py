import numpy as np
import pytest
from conftest import element, random_set
from hypothesis import given, settings
from hypothesis import strategies as st

from simplegrowth import get_group
from simplegrowth.setalg import (
    ElementSet,
    GroupMismatch,
    closure,
    conjugate,
    conjugate_growth_sizes,
    cube_is_full,
    generates,
    inverse,
    is_full,
    is_normal,
    middle_product_sizes,
    power,
    product,
    product_many,
    translate,
)

ALT5 = get_group("Alt(5)")
PSL27 = get_group("PSL2(7)")


def subsets(G, max_size=12):
    return st.lists(st.integers(0, G.order - 1), min_size=1, max_size=max_size).map(
        lambda xs: ElementSet.from_indices(G, xs)
    )


def elements(G):
    return st.integers(0, G.order - 1)


def five_cycle_class(G):
    return ElementSet(G, G.classes.class_of == 2)


def test_identity_product(alt5):
    one = ElementSet.identity(alt5)
    assert product(one, one) == one
    assert inverse(one) == one
    assert closure(one) == one


def test_group_mismatch(alt5, psl27):
    with pytest.raises(GroupMismatch):
        product(ElementSet.identity(alt5), ElementSet.identity(psl27))


def test_cyclic_subgroup_idempotent(alt5):
    c = element(alt5, [1, 2, 3, 4, 0])
    H = closure(ElementSet.from_indices(alt5, [c]))
    assert H.card == 5
    assert product(H, H) == H


def test_three_cycle_generates_order_three(alt5):
    c = element(alt5, [1, 2, 0, 3, 4])
    assert closure(ElementSet.from_indices(alt5, [c])).card == 3


@pytest.mark.parametrize("name", ["Alt(5)", "PSL2(7)", "PSL2(8)", "PSL3(2)"])
def test_generators_close_to_group(name):
    G = get_group(name)
    S = ElementSet.from_indices(G, G.generator_indices)
    assert generates(S) and closure(S).card == G.order


def test_products_match_naive(alt5, naive_alt5, rng):
    for _ in range(40):
        A, B = random_set(alt5, rng, 1, 15), random_set(alt5, rng, 1, 15)
        assert set(product(A, B).to_list()) == naive_alt5.prod(A.to_list(), B.to_list())
        assert set(inverse(A).to_list()) == naive_alt5.inverse(A.to_list())
        g = int(rng.integers(alt5.order))
        assert set(conjugate(A, g).to_list()) == naive_alt5.conj(A.to_list(), g)


def test_power_matches_naive(psl27, naive_psl27, rng):
    for _ in range(10):
        S = random_set(psl27, rng, 2, 5)
        for m in (1, 2, 3):
            assert set(power(S, m).to_list()) == naive_psl27.power(S.to_list(), m)


def test_product_size_bounds(psl27, rng):
    for _ in range(50):
        A, B = random_set(psl27, rng, 1, 30), random_set(psl27, rng, 1, 30)
        n = product(A, B).card
        assert max(A.card, B.card) <= n <= min(A.card * B.card, psl27.order)
        assert 0 in product(A, inverse(A))


def test_conjugate_size_and_identity(psl27, rng):
    for _ in range(100):
        S = random_set(psl27, rng, 1, 40)
        g = int(rng.integers(psl27.order))
        assert conjugate(S, g).card == S.card
        assert conjugate(S, 0) == S


def test_normal_sets_fixed_by_every_conjugator(alt5):
    S = ElementSet(alt5, np.isin(alt5.classes.class_of, [1, 4]))
    assert is_normal(S)
    assert all(conjugate(S, g) == S for g in range(alt5.order))
    assert not is_normal(ElementSet.from_indices(alt5, [1]))


def test_translate(psl27, naive_psl27, rng):
    S = random_set(psl27, rng, 3, 10)
    assert translate(S, 0) == S
    for g in rng.integers(psl27.order, size=20).tolist():
        right = translate(S, g, "right")
        assert right.card == S.card
        assert set(right.to_list()) == {naive_psl27.mul(s, g) for s in S.to_list()}
        # g^-1 (S g) = S^g
        assert translate(right, int(psl27.inv[g]), "left") == conjugate(S, g)
    with pytest.raises(ValueError):
        translate(S, 0, "middle")


def test_involution_class_self_inverse(alt5):
    inv_class = ElementSet(alt5, alt5.classes.class_of == 4)
    assert inv_class.card == 15
    assert inverse(inv_class) == inv_class


def test_power_monotone_with_identity(alt5):
    S = five_cycle_class(alt5) | ElementSet.identity(alt5)
    sizes = [power(S, m).card for m in range(1, 5)]
    assert sizes == sorted(sizes)
    with pytest.raises(ValueError):
        power(S, 0)


def test_five_cycle_class_cube(alt5, naive_alt5):
    C = five_cycle_class(alt5)
    assert C.card == 12
    assert power(C, 3).card == 60
    assert len(naive_alt5.power(C.to_list(), 3)) == 60
    assert cube_is_full(C)


def test_fullness(alt5):
    assert is_full(ElementSet.full(alt5))
    # a maximal subgroup (point stabiliser, Alt(4)) is closed under products
    stab = ElementSet(alt5, alt5.perms[:, 4] == 4)
    assert stab.card == 12
    assert not cube_is_full(stab)


def test_conjugate_growth_sizes_match_naive(alt5, naive_alt5, rng):
    S = random_set(alt5, rng, 2, 8)
    sizes = conjugate_growth_sizes(S)
    for g in range(alt5.order):
        assert sizes[g] == len(naive_alt5.prod(S.to_list(), naive_alt5.conj(S.to_list(), g)))


def test_middle_product_sizes_with_right_factor(psl27, naive_psl27, rng):
    S, R = random_set(psl27, rng, 2, 6), random_set(psl27, rng, 2, 6)
    mids = rng.integers(psl27.order, size=30)
    got = middle_product_sizes(S, mids, R)
    want = [len(naive_psl27.prod(S.to_list(), [int(h)], R.to_list())) for h in mids]
    assert got.tolist() == want


def test_singleton_and_normal_conjugate_growth(alt5):
    assert set(conjugate_growth_sizes(ElementSet.from_indices(alt5, [7])).tolist()) == {1}
    C = five_cycle_class(alt5)
    assert set(conjugate_growth_sizes(C).tolist()) == {power(C, 2).card}


def test_set_operations_and_digest(alt5):
    A = ElementSet.from_indices(alt5, [1, 2, 3])
    B = ElementSet.from_indices(alt5, [3, 4])
    assert (A | B).to_list() == [1, 2, 3, 4]
    assert (A & B).to_list() == [3]
    assert (A - B).to_list() == [1, 2]
    assert (A & B) <= A
    assert A.digest() == ElementSet.from_indices(alt5, [3, 2, 1]).digest() != B.digest()


def test_product_many(alt5):
    gens = ElementSet.from_indices(alt5, alt5.generator_indices)
    assert product_many(gens, gens, gens) == power(gens, 3)


@settings(max_examples=60, deadline=None)
@given(subsets(ALT5), subsets(ALT5), subsets(ALT5))
def test_product_associative(A, B, C):
    assert product(product(A, B), C) == product(A, product(B, C))


@settings(max_examples=60, deadline=None)
@given(subsets(PSL27), subsets(PSL27), elements(PSL27))
def test_conjugation_distributes(A, B, g):
    assert conjugate(product(A, B), g) == product(conjugate(A, g), conjugate(B, g))


@settings(max_examples=60, deadline=None)
@given(subsets(PSL27), elements(PSL27), elements(PSL27))
def test_conjugation_is_right_action(S, g, h):
    # (S^g)^h = S^(gh)
    assert conjugate(conjugate(S, g), h) == conjugate(S, int(PSL27.mul(g, h)))


@settings(max_examples=60, deadline=None)
@given(subsets(PSL27), elements(PSL27), elements(PSL27))
def test_translate_identity(S, g, h):
    # Sg . Sh = S . S^(g^-1) . gh
    lhs = product(translate(S, g), translate(S, h))
    rhs = translate(product(S, conjugate(S, int(PSL27.inv[g]))), int(PSL27.mul(g, h)))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(subsets(ALT5, 20))
def test_inverse_reverses_products(S):
    assert inverse(product(S, S)) == product(inverse(S), inverse(S))
    assert inverse(inverse(S)) == S
