"""Chermak-Delgado measure, the CD lattice, and its structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InconsistentLattice, NotASubgroup
from .group import (
    FiniteGroup,
    Subgroup,
    center,
    centralizer,
    subgroup_as_group,
)
from .lattice import SubgroupLattice, enumerate_subgroups


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: object = None
    note: str = ""


@dataclass(frozen=True)
class CDReport:
    m_star: int
    cd_members: tuple[Subgroup, ...]
    delta: int
    min_member: Subgroup
    max_member: Subgroup
    lattice_size: int
    axiom_results: dict = field(default_factory=dict, compare=False)

    def contains(self, h: Subgroup) -> bool:
        return any(h == x for x in self.cd_members)


def measure(g: FiniteGroup, h: Subgroup) -> int:
    """``|H| * |C_G(H)|``."""
    if h.parent_order != g.order or not g.is_subgroup_mask(h.mask):
        raise NotASubgroup("argument is not a subgroup of this group")
    return h.size * centralizer(g, h).size


def cd_lattice(g: FiniteGroup, lattice: SubgroupLattice) -> CDReport:
    """Exhaustive argmax of the measure over ``lattice``.

    The argmax set is checked to be closed under meet and join; a failure
    means the lattice was incomplete, never a property of the group.
    """
    measures = [h.size * centralizer(g, h).size for h in lattice]
    m_star = max(measures)
    members = tuple(h for h, m in zip(lattice, measures) if m == m_star)
    masks = {h.mask for h in members}
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a.mask & b.mask not in masks:
                raise InconsistentLattice(f"meet of CD members {a} and {b} is not in CD")
            if g.join(a, b).mask not in masks:
                raise InconsistentLattice(f"join of CD members {a} and {b} is not in CD")
    lo, hi = members[0], members[-1]
    for h in members:
        lo = lo & h
        hi = g.join(hi, h)
    if lo.mask not in masks or hi.mask not in masks:
        raise InconsistentLattice("CD has no least or greatest member")
    return CDReport(m_star, members, len(lattice) - len(members), lo, hi, len(lattice))


def cd_report(g: FiniteGroup) -> CDReport:
    return cd_lattice(g, enumerate_subgroups(g))


def delta(g: FiniteGroup) -> int:
    """Number of subgroups outside the CD lattice."""
    return cd_report(g).delta


def _cd_member_sets_in_sub(g: FiniteGroup, m: Subgroup) -> set[int]:
    """CD(M) computed inside M from scratch, mapped back to masks of G."""
    sub, embed = subgroup_as_group(g, m)
    report = cd_report(sub)
    out = set()
    for h in report.cd_members:
        out.add(g.subgroup_from_indices(embed[h.indices]).mask)
    return out


def verify_cd_axioms(g: FiniteGroup, report: CDReport) -> dict[str, AxiomResult]:
    """Check the lattice identities every CD lattice satisfies.

    Keys: ``join_is_product``, ``centralizer_of_meet``, ``double_centralizer``,
    ``max_member``, ``min_member``, ``modular_law``. Characteristic claims are
    checked as normality only.
    """
    members = report.cd_members
    masks = {h.mask for h in members}
    cent = {h.mask: centralizer(g, h) for h in members}
    z = center(g)
    results: dict[str, AxiomResult] = {}

    def record(name, witness, note=""):
        results[name] = AxiomResult(name, witness is None, witness, note)

    joins: dict[tuple[int, int], Subgroup] = {}

    def join(a, b):
        key = (a.mask, b.mask)
        if key not in joins:
            joins[key] = joins[b.mask, a.mask] = g.join(a, b)
        return joins[key]

    witness = None
    for i, a in enumerate(members):
        for b in members[i:]:
            ab = join(a, b)
            if g.product_set(a, b).mask != ab.mask or ab.mask not in masks:
                witness = (a, b)
                break
        if witness:
            break
    record("join_is_product", witness)

    witness = None
    for i, a in enumerate(members):
        for b in members[i:]:
            lhs = centralizer(g, a & b)
            rhs = g.product_set(cent[a.mask], cent[b.mask])
            if lhs.mask != rhs.mask:
                witness = (a, b)
                break
        if witness:
            break
    record("centralizer_of_meet", witness)

    witness = None
    for h in members:
        c = cent[h.mask]
        if c.mask not in masks or centralizer(g, c).mask != h.mask or not z <= h:
            witness = h
            break
    record("double_centralizer", witness)

    top = report.max_member
    inner = _cd_member_sets_in_sub(g, top)
    if inner != masks:
        record("max_member", top, "CD(M) differs from CD(G)")
    elif not g.is_normal(top):
        record("max_member", top, "maximal member is not normal")
    else:
        record("max_member", None, "characteristic checked as normal")

    bottom = report.min_member
    ok = g.is_abelian_subgroup(bottom) and z <= bottom and g.is_normal(bottom)
    record("min_member", None if ok else bottom, "characteristic checked as normal")

    witness = None
    for x in members:
        for zz in members:
            if not x <= zz:
                continue
            for y in members:
                lhs = join(x, y & zz)
                rhs = join(x, y) & zz
                if lhs.mask != rhs.mask:
                    witness = (x, y, zz)
                    break
            if witness:
                break
        if witness:
            break
    record("modular_law", witness)
    return results


def analyze(g: FiniteGroup, lattice: SubgroupLattice | None = None, axioms: bool = False) -> CDReport:
    """CD report for ``g``, optionally with the axiom checks attached."""
    lattice = enumerate_subgroups(g) if lattice is None else lattice
    report = cd_lattice(g, lattice)
    if axioms:
        report.axiom_results.update(verify_cd_axioms(g, report))
    return report
