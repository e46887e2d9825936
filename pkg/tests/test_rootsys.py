from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genmac.charring import dominant_multiplicities
from genmac.rootsys import (build_root_system, dominance_leq, dominant_weights_below,
                            dominant_weights_by_height, dominant_weights_upto, is_dominant,
                            known_weyl_order, negate_longest, parse_root_system, total_order_key,
                            weyl_orbit)

from oracles import HAND_ROOTS, WEYL_ORDERS, dominance_bruteforce, weyl_dimension

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]


@pytest.mark.parametrize("key,order", sorted(WEYL_ORDERS.items()))
def test_weyl_order_table(key, order):
    rs = build_root_system(*key)
    assert rs.weyl_order == order
    assert known_weyl_order(*key) == order


@pytest.mark.parametrize("label", sorted(HAND_ROOTS))
def test_roots_match_hand_lists(label):
    rs = parse_root_system(label)
    assert sorted(rs.roots) == sorted(HAND_ROOTS[label])


@pytest.mark.parametrize("label,count", [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12),
                                         ("G2", 6), ("F4", 24), ("E6", 36), ("E7", 63)])
def test_positive_root_counts(label, count):
    assert len(parse_root_system(label).positive_roots) == count


@pytest.mark.parametrize("bad", ["", "X3", "A0", "B1", "D3", "E5", "G3", "F2", "A-1", "2A"])
def test_invalid_labels(bad):
    with pytest.raises(ValueError):
        parse_root_system(bad)


def test_cartan_columns_are_simple_roots():
    for label in TYPES:
        rs = parse_root_system(label)
        for j, alpha in enumerate(rs.simple_roots):
            assert alpha == tuple(rs.cartan_matrix[i][j] for i in range(rs.rank))


@pytest.mark.parametrize("label", TYPES)
def test_orbit_sizes_divide_weyl_order(label):
    rs = parse_root_system(label)
    for lam in dominant_weights_by_height(rs, 2):
        orb = weyl_orbit(rs, lam)
        assert rs.weyl_order % len(orb) == 0
        assert sum(1 for w in orb if is_dominant(w)) == 1


@pytest.mark.parametrize("label", ["A2", "B2", "B3", "C3", "G2", "D4", "F4"])
def test_freudenthal_dimension_matches_weyl_formula(label):
    rs = parse_root_system(label)
    for lam in dominant_weights_by_height(rs, 3 if rs.rank <= 3 else 2):
        mult = dominant_multiplicities(rs, lam)
        dim = sum(m * len(weyl_orbit(rs, mu)) for mu, m in mult.items())
        assert dim == weyl_dimension(rs, lam), lam


def test_adjoint_dimensions():
    expected = {"A2": 8, "B2": 10, "G2": 14, "F4": 52, "E6": 78}
    highest = {"A2": (1, 1), "B2": (0, 2), "G2": (0, 1), "F4": (1, 0, 0, 0), "E6": (0, 1, 0, 0, 0, 0)}
    for label, dim in expected.items():
        rs = parse_root_system(label)
        assert weyl_dimension(rs, highest[label]) == dim


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_dominance_against_search(label):
    rs = parse_root_system(label)
    weights = dominant_weights_by_height(rs, 3)
    for lam in weights:
        for mu in weights:
            assert dominance_leq(rs, mu, lam) == dominance_bruteforce(rs, mu, lam)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
def test_total_order_refines_dominance(label):
    rs = parse_root_system(label)
    weights = dominant_weights_by_height(rs, 3)
    for lam in weights:
        for mu in weights:
            if mu != lam and dominance_leq(rs, mu, lam):
                assert total_order_key(rs, mu) < total_order_key(rs, lam)


def test_dominant_weights_below_a2():
    rs = parse_root_system("A2")
    assert set(dominant_weights_below(rs, (2, 2))) == {(2, 2), (3, 0), (0, 3), (1, 1), (0, 0)}


def test_upto_is_prefix_of_total_order():
    rs = parse_root_system("A1")
    assert dominant_weights_upto(rs, (5,)) == [(m,) for m in range(6)]


def test_negate_longest():
    rs = parse_root_system("A2")
    assert negate_longest(rs, (2, 1)) == (1, 2)
    assert negate_longest(parse_root_system("B2"), (1, 1)) == (1, 1)


weights_a2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
weights_b2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@given(weights_a2, weights_a2, st.sampled_from(["A2", "B2", "G2"]))
def test_reflections_preserve_inner_product(mu, nu, label):
    rs = parse_root_system(label)
    for i in range(rs.rank):
        assert rs.inner(rs.reflect(mu, i), rs.reflect(nu, i)) == rs.inner(mu, nu)
        assert rs.reflect(rs.reflect(mu, i), i) == mu


@given(weights_b2, st.sampled_from(["A2", "B2", "G2"]))
def test_dominant_conjugate_is_in_orbit(mu, label):
    rs = parse_root_system(label)
    dom, steps = rs.dominant_conjugate(mu)
    assert is_dominant(dom)
    assert steps >= 0
    assert mu in weyl_orbit(rs, dom)
    assert rs.inner(mu, mu) == rs.inner(dom, dom)


@given(weights_a2)
def test_inner_product_symmetric_positive(mu):
    rs = parse_root_system("A2")
    assert rs.inner(mu, mu) >= 0
    assert (rs.inner(mu, mu) == 0) == (mu == (0, 0))
    assert isinstance(rs.inner(mu, mu), (int, Fraction))
