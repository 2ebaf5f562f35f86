import pytest

from cdlattice import FamilySpec, build_from_permutation_generators, build_from_table, center, construct_family
from cdlattice.errors import BadParameters
from cdlattice.families import (
    M2_2_1_1_GENERATORS,
    M2_2_2_GENERATORS,
    _modular_table,
    abelian,
    cyclic,
    dihedral,
    extraspecial,
    family_instances,
    modular,
    mp111cp,
    quaternion,
    semidihedral,
)
from cdlattice.group import derived_and_lcs
from cdlattice.verify import fingerprint

import oracles


def find(g, order, pred=lambda x: True):
    return [x for x in range(g.order) if g.element_order(x) == order and pred(x)]


@pytest.mark.parametrize("p, n, m", [(2, 3, 1), (2, 4, 1), (3, 2, 1), (3, 3, 1), (5, 2, 1), (3, 2, 2)])
def test_modular_relation(p, n, m):
    g = construct_family(modular(p, n, m))
    assert g.order == p ** (n + m)
    assert g.exponent == p ** n
    r = 1 + p ** (n - 1)
    # some a of order p^n and b of order p^m with b^-1 a b = a^r and <a, b> = G
    ok = False
    for a in find(g, p ** n):
        for b in find(g, p ** m):
            if g.mul(g.inv(b), g.mul(a, b)) == g.power(a, r) and g.span([a, b]).size == g.order:
                ok = True
                break
        if ok:
            break
    assert ok
    assert not g.is_abelian


@pytest.mark.parametrize("p, n, m", [(3, 1, 1), (3, 2, 1), (5, 1, 1)])
def test_extraspecial_type(p, n, m):
    g = construct_family(extraspecial(p, n, m))
    assert g.order == p ** (n + m + 1)
    assert derived_and_lcs(g).nilpotency_class == 2
    comm = next(c for x in range(g.order) for y in range(g.order)
                if (c := g.commutator(x, y)) != 0)
    assert g.element_order(comm) == p
    assert comm in center(g)


def test_dihedral_like_involutions():
    for n in (3, 4, 5):
        q = construct_family(quaternion(n))
        d = construct_family(dihedral(n))
        assert len(find(q, 2)) == 1
        assert len(find(d, 2)) == 2 ** (n - 1) + 1
        if n >= 4:
            sd = construct_family(semidihedral(n))
            assert len(find(sd, 2)) == 2 ** (n - 2) + 1
        for g in (q, d):
            assert g.exponent == 2 ** (n - 1)
            assert derived_and_lcs(g).nilpotency_class == n - 1


def test_mp111cp_order_and_center():
    g = construct_family(mp111cp(3, 4))
    assert g.order == 81
    assert center(g).size == 9
    assert not g.is_abelian


def test_wreath():
    g = construct_family(FamilySpec.parse("wreath"))
    assert g.order == 81
    assert derived_and_lcs(g).nilpotency_class == 3
    assert center(g).size == 3


def test_order16_catalog_is_fourteen_distinct_groups(catalog16):
    assert len(catalog16) == 14
    fps = {fingerprint(g) for _, g in catalog16}
    assert len(fps) == 14
    assert sum(g.is_abelian for _, g in catalog16) == 5


def test_permutation_presentations_match_normal_forms():
    a = build_from_permutation_generators(8, M2_2_2_GENERATORS)
    table, _ = _modular_table(2, 2, 2)
    assert fingerprint(a) == fingerprint(build_from_table(16, table))
    b = build_from_permutation_generators(8, M2_2_1_1_GENERATORS)
    assert b.order == 16
    assert sorted(int((b.element_orders == k).sum()) for k in (1, 2, 4)) == [1, 7, 8]
    assert center(b).size == 4


def test_spec_round_trip():
    for text in ["cyclic:p=3,k=4", "modular:p=3,n=2,m=1", "quaternion:n=3", "d8c4", "wreath",
                 "extraspecial:p=5,n=1,m=1", "abelian:p=2,s=2,t=1"]:
        spec = FamilySpec.parse(text)
        assert str(spec) == text
        assert FamilySpec.parse(str(spec)) == spec


def test_labels():
    assert modular(3, 2, 1).label == "M3(2,1)"
    assert abelian(2, 3, 1).label == "C8xC2"
    assert cyclic(5, 2).label == "C25"
    assert semidihedral(4).label == "SD16"


@pytest.mark.parametrize("text", ["cyclic:p=4,k=2", "modular:p=2,n=2,m=1", "dihedral:n=2",
                                  "extraspecial:p=2,n=1,m=1", "bogus", "cyclic:p=3", "cyclic:p=3,k=x",
                                  "quaternion:n=3,m=1", "abelian:p=3,s=1,t=2"])
def test_bad_specs(text):
    with pytest.raises(BadParameters):
        FamilySpec.parse(text)


def test_every_instance_has_its_order():
    for spec in family_instances(64):
        g = construct_family(spec)
        assert g.order == spec.order, spec
        if g.order <= 16:
            assert oracles.is_group(g.table.tolist()), spec
