import pytest

from cdlattice import analyze, construct_family, delta, enumerate_subgroups, measure
from cdlattice.cd import cd_lattice
from cdlattice.errors import NotASubgroup
from cdlattice.families import abelian, cyclic, dihedral, extraspecial, modular, quaternion
from cdlattice.group import Subgroup, center

import oracles


def test_q8_report():
    g = construct_family(quaternion(3))
    r = analyze(g)
    assert r.m_star == 16
    assert len(r.cd_members) == 5
    assert r.delta == 1
    assert r.lattice_size == 6
    assert r.min_member == center(g)
    assert r.max_member == g.whole


def test_measure():
    g = construct_family(dihedral(3))
    assert measure(g, g.whole) == 16
    assert measure(g, g.trivial) == 8
    with pytest.raises(NotASubgroup):
        measure(g, Subgroup(8, 0b11))


def test_abelian_cd_is_whole_group():
    for spec in (cyclic(3, 3), abelian(2, 2, 1), abelian(5, 1, 1)):
        g = construct_family(spec)
        r = analyze(g)
        assert r.cd_members == (g.whole,)
        assert r.m_star == g.order ** 2
        assert r.delta == len(enumerate_subgroups(g)) - 1


@pytest.mark.parametrize("spec, expected", [
    (quaternion(3), 1), (dihedral(3), 5), (modular(2, 3, 1), 6),
    (cyclic(2, 4), 4), (abelian(3, 1, 1), 5), (modular(3, 2, 1), 4),
])
def test_delta_against_oracle(spec, expected):
    g = construct_family(spec)
    assert delta(g) == expected
    assert oracles.delta(g.table.tolist()) == expected


def test_report_invariants(corpus):
    for label, g in corpus:
        if g.order > 64:
            continue
        lattice = enumerate_subgroups(g)
        r = cd_lattice(g, lattice)
        assert r.delta == len(lattice) - len(r.cd_members), label
        assert all(measure(g, h) == r.m_star for h in r.cd_members), label
        assert all(measure(g, h) <= r.m_star for h in lattice), label
        assert center(g) <= r.min_member, label
        sizes = sorted(h.size for h in r.cd_members)
        assert sizes == sorted(r.m_star // s for s in sizes), label


def test_axioms_on_small_nonabelian_groups():
    for spec in (dihedral(4), quaternion(4), modular(3, 2, 1), extraspecial(3, 1, 1)):
        g = construct_family(spec)
        r = analyze(g, axioms=True)
        assert set(r.axiom_results) == {"join_is_product", "centralizer_of_meet", "double_centralizer",
                                        "max_member", "min_member", "modular_law"}
        assert all(a.passed for a in r.axiom_results.values()), spec


def test_extraspecial_27_cd_is_interval_over_center():
    g = construct_family(extraspecial(3, 1, 1))
    r = analyze(g)
    assert len(r.cd_members) == 6
    assert r.min_member == center(g)


def test_c4xc4_delta_by_brute_force():
    table = oracles.product_table(oracles.cyclic_table(4), oracles.cyclic_table(4))
    subs, cd, m_star = oracles.cd_members(table)
    assert len(subs) == 15 and len(cd) == 1 and m_star == 256
    assert oracles.delta(table) == 14
    assert delta(construct_family(abelian(2, 2, 2))) == 14
