import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlattice import (
    build_from_permutation_generators,
    build_from_table,
    builtin_corpus,
    center,
    central_product,
    centralizer,
    construct_family,
    derived_and_lcs,
    direct_product,
    quotient,
)
from cdlattice.errors import (
    BadDimensions,
    NotAGroup,
    NotAPermutation,
    NotCentral,
    NotNormal,
    NotPGroup,
    OrderCapExceeded,
    OrderMismatch,
)
from cdlattice.families import abelian, cyclic, dihedral, quaternion
from cdlattice.group import parse_cycles, prime_power

import oracles

SMALL = dict(builtin_corpus(32, (2, 3)))


def z(n):
    return build_from_table(n, oracles.cyclic_table(n))


def test_trivial_group():
    g = build_from_table(1, [[0]])
    assert g.order == 1
    assert g.exponent == 1
    assert derived_and_lcs(g).nilpotency_class == 0


def test_identity_moved_to_index_zero():
    # Z/3 with the identity stored at index 2
    t = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    g = build_from_table(3, t)
    assert list(g.table[0]) == [0, 1, 2]
    assert oracles.is_group(g.table.tolist())


@pytest.mark.parametrize("table, exc", [
    ([[0, 1], [1, 1]], NotAGroup),           # repeated entry in a row
    ([[0, 1, 2], [1, 2, 0]], BadDimensions),
    ([[0, 1], [1, 2]], NotAGroup),           # entry out of range
    ([[1, 0], [0, 0]], NotAGroup),           # no identity
])
def test_bad_tables(table, exc):
    with pytest.raises(exc):
        build_from_table(len(table), table)


def test_latin_square_that_is_not_associative():
    # a loop of order 5 with identity 0 but no associativity
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup):
        build_from_table(5, t)


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        build_from_table(4, oracles.cyclic_table(4), cap=2)


def test_permutation_groups():
    c3 = build_from_permutation_generators(3, ["(1 2 3)"])
    assert c3.order == 3 and c3.is_abelian
    w = build_from_permutation_generators(9, ["(1 2 3)", "(1 4 7)(2 5 8)(3 6 9)"])
    assert w.order == 81
    d8 = build_from_permutation_generators(4, ["(1 2 3 4)", "(1 3)"])
    assert d8.order == 8
    assert int((d8.element_orders == 2).sum()) == 5


def test_permutation_images_and_cycles_agree():
    a = build_from_permutation_generators(4, ["(1 2 3 4)"])
    b = build_from_permutation_generators(4, [[2, 3, 4, 1]])
    assert a.order == b.order == 4


@pytest.mark.parametrize("text", ["(1 2 2)", "(1 5)", "(1 x)", "1 2"])
def test_bad_cycles(text):
    with pytest.raises(NotAPermutation):
        parse_cycles(text, 4)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None


def test_direct_product_matches_oracle():
    g = direct_product(z(4), z(2))
    expect = oracles.product_table(oracles.cyclic_table(4), oracles.cyclic_table(2))
    assert g.table.tolist() == expect
    assert g.order == 8 and g.exponent == 4


def test_quotient():
    g = z(8)
    n = g.span([4])
    q = quotient(g, n)
    assert q.order == 4 and q.exponent == 4


def test_quotient_by_non_normal():
    d8 = construct_family(dihedral(3))
    reflection = next(x for x in range(8) if d8.element_order(x) == 2 and x not in center(d8))
    with pytest.raises(NotNormal) as info:
        quotient(d8, d8.span([reflection]))
    assert info.value.witness is not None


def test_central_product_d8_c4_order():
    d8 = construct_family(dihedral(3))
    c4 = construct_family(cyclic(2, 2))
    zd = center(d8).members[1]
    g = central_product(d8, c4, zd, 2)
    assert g.order == 16
    assert center(g).size == 4


def test_central_product_errors():
    d8 = construct_family(dihedral(3))
    c4 = construct_family(cyclic(2, 2))
    non_central = next(x for x in range(8) if x not in center(d8))
    with pytest.raises(NotCentral):
        central_product(d8, c4, non_central, 2)
    with pytest.raises(OrderMismatch):
        central_product(d8, c4, center(d8).members[1], 1)


def test_centralizer_and_center():
    q8 = construct_family(quaternion(3))
    assert center(q8).size == 2
    assert centralizer(q8, q8.whole) == center(q8)
    assert centralizer(q8, q8.trivial) == q8.whole
    for x in range(8):
        c = centralizer(q8, q8.span([x]))
        assert c.size == (8 if x in center(q8) else 4)


def test_structure_scalars():
    d8 = construct_family(dihedral(3))
    s = derived_and_lcs(d8)
    assert s.exponent == 4
    assert s.min_generators == 2
    assert s.nilpotency_class == 2
    assert [h.size for h in s.lower_central_series] == [8, 2, 1]
    ab = construct_family(abelian(3, 2, 1))
    assert derived_and_lcs(ab).nilpotency_class == 1
    with pytest.raises(NotPGroup):
        derived_and_lcs(z(6))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C8", "D8", "Q8", "C4xC2", "M3(2,1)", "M3(1,1,1)", "D16"]),
       st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=3))
def test_triple_centralizer(label, raw):
    g = SMALL[label]
    h = g.subgroup_generated([r % g.order for r in raw])
    c = centralizer(g, h)
    assert h <= centralizer(g, c)
    assert centralizer(g, centralizer(g, c)) == c
    # brute force
    assert set(c.members) == oracles.centralizer(g.table.tolist(), h.members)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(8)))
def test_generated_subgroup_ignores_generator_order(perm):
    g = construct_family(dihedral(3))
    gens = list(perm[:3])
    a = g.subgroup_generated(gens)
    b = g.subgroup_generated(list(reversed(gens)))
    assert a == b
    assert set(a.members) == oracles.closure(g.table.tolist(), gens)


def test_element_orders_match_powers():
    g = construct_family(quaternion(4))
    for x in range(g.order):
        k = int(g.element_orders[x])
        assert g.power(x, k) == 0
        assert all(g.power(x, j) != 0 for j in range(1, k))


def test_tables_are_groups(small_corpus):
    for label, g in small_corpus:
        if g.order <= 32:
            assert oracles.is_group(g.table.tolist()), label
        assert np.array_equal(g.table[np.arange(g.order), g.inverse], np.zeros(g.order, dtype=g.table.dtype)), label
