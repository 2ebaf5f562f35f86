"""Claim-level checks: each function returns ClaimResult rows, never raises on a failed claim."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import families as fam
from .cd import CDReport, cd_lattice
from .errors import PreconditionFailed
from .group import (
    FiniteGroup,
    Subgroup,
    center,
    centralizer,
    commutator_subgroup,
    derived_and_lcs,
    max_order,
    quotient_with_projection,
)
from .lattice import (
    SubgroupLattice,
    enumerate_subgroups,
    is_maximal_class,
    is_metacyclic,
    ranks_and_omega,
    subgroup_counts,
    upper_interval,
)


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    group_label: str
    expected: object
    actual: object
    passed: bool
    note: str = ""
    skipped: bool = False
    details: dict = field(default_factory=dict, compare=False)


def claim(claim_id, label, expected, actual, note="", **details) -> ClaimResult:
    return ClaimResult(claim_id, label, expected, actual, expected == actual, note, False, details)


def skipped(claim_id, label, note) -> ClaimResult:
    return ClaimResult(claim_id, label, "n/a", "n/a", True, f"skipped: {note}", True)


class Analysis:
    """Lazily computed lattice, CD report and fingerprint for one group."""

    def __init__(self, label: str, group: FiniteGroup):
        self.label = label
        self.group = group
        self._lattice = None
        self._report = None

    @property
    def lattice(self) -> SubgroupLattice:
        if self._lattice is None:
            self._lattice = enumerate_subgroups(self.group)
        return self._lattice

    @property
    def report(self) -> CDReport:
        if self._report is None:
            self._report = cd_lattice(self.group, self.lattice)
        return self._report

    @property
    def delta(self) -> int:
        return self.report.delta


def fingerprint(g: FiniteGroup, lattice: SubgroupLattice | None = None) -> tuple:
    """``(order, subgroup counts by order, |Z|, |G'|, exponent, class)``."""
    lattice = enumerate_subgroups(g) if lattice is None else lattice
    counts = tuple(sorted(lattice.size_counts.items()))
    derived = commutator_subgroup(g, g.whole, g.whole)
    klass = derived_and_lcs(g).nilpotency_class if g.order > 1 else 0
    return (g.order, counts, center(g).size, derived.size, g.exponent, klass)


def _fp(spec: fam.FamilySpec) -> tuple:
    return fingerprint(fam.construct_family(spec))


# families with small delta ------------------------------------------------

def verify_family_delta(p: int, budget: int | None = None) -> list[ClaimResult]:
    """δ for every member of the four small-δ families of order at most ``budget``.

    Also records the first members just outside each family (δ above
    ``p^2 + p``) when they fit in the budget.
    """
    if p not in (2, 3, 5):
        raise PreconditionFailed("p must be 2, 3 or 5")
    budget = max_order() if budget is None else min(budget, max_order())
    bound = p * p + p
    out: list[ClaimResult] = []

    def family(claim_id, spec, expected):
        a = Analysis(spec.label, fam.construct_family(spec))
        out.append(claim(claim_id, spec.label, expected, a.delta))
        out.append(claim("main-thm-bound", spec.label, True, a.delta <= bound,
                         note=f"delta={a.delta} <= {bound}"))

    def excluded(spec):
        if spec.order > budget:
            return
        d = Analysis(spec.label, fam.construct_family(spec)).delta
        out.append(claim("main-thm-excluded", spec.label, True, d > bound,
                         note=f"delta={d} > {bound}"))

    for k in range(1, bound + 1):
        if p ** k > budget:
            break
        family("main-thm-family-1", fam.cyclic(p, k), k)
    excluded(fam.cyclic(p, bound + 1))
    for t in range(1, p):
        if p ** (t + 1) <= budget:
            family("main-thm-family-2", fam.abelian(p, t, 1), t * (p + 1) + 1)
    excluded(fam.abelian(p, p, 1))
    if p == 2:
        family("main-thm-family-3", fam.quaternion(3), 1)
    for k in range(3 if p == 2 else 2, p + 2):
        if p ** (k + 1) <= budget:
            family("main-thm-family-4", fam.modular(p, k, 1), (k - 1) * (p + 1))
    excluded(fam.modular(p, p + 2, 1))
    return out


def main_theorem_list(p: int, max_order_: int) -> set[str]:
    """Labels of the classified groups with ``δ <= p^2 + p`` and order ``<= max_order_``.

    For ``p = 2`` the modular family starts at ``M_2(2,1)``, which is ``D8``.
    """
    bound = p * p + p
    labels = {fam.cyclic(p, k).label for k in range(1, bound + 1) if p ** k <= max_order_}
    labels |= {fam.abelian(p, t, 1).label for t in range(1, p) if p ** (t + 1) <= max_order_}
    if p == 2 and max_order_ >= 8:
        labels.add("Q8")
    for k in range(2, p + 2):
        if p ** (k + 1) <= max_order_:
            labels.add("D8" if (p, k) == (2, 2) else fam.modular(p, k, 1).label)
    return labels


def small_delta_groups(groups: Iterable[tuple[str, FiniteGroup]], bound: int) -> dict[str, int]:
    """``{label: δ}`` for the groups with ``δ <= bound``."""
    out = {}
    for label, g in groups:
        d = Analysis(label, g).delta
        if d <= bound:
            out[label] = d
    return out


# order 16 ------------------------------------------------------------------

def _order16_expected() -> dict[str, int]:
    # C16 from the cyclic family; C8xC2 from s(p+1)+1; C4xC4 is |L| - 1 with
    # |L(C_{p^2} x C_{p^2})| = p^2 + 3p + 5, which gives p^2 + 3p + 4.
    p = 2
    return {
        "C16": 4,
        "C8xC2": 3 * (p + 1) + 1,
        "C4xC4": p * p + 3 * p + 4,
        "M2(3,1)": (3 - 1) * (p + 1),
    }


def scan_order16() -> list[ClaimResult]:
    """δ for all fourteen groups of order 16 and the set with δ <= 6."""
    expected = _order16_expected()
    out = []
    selected = []
    for label, g in fam.order16_catalog():
        d = Analysis(label, g).delta
        if label in expected:
            out.append(claim("order16-delta", label, expected[label], d))
        else:
            out.append(claim("order16-delta", label, True, d > 6, note=f"delta={d} > 6"))
        if d <= 6:
            selected.append(label)
    out.append(claim("order16-selection", "order16", ("C16", "M2(3,1)"), tuple(sorted(selected))))
    return out


# metacyclic interval -----------------------------------------------------

def verify_metacyclic_interval(g: FiniteGroup, label: str | None = None,
                               lattice: SubgroupLattice | None = None) -> ClaimResult:
    """``CD(G) = [G/Z(G)]`` for a metacyclic p-group with p odd, plus the index identity."""
    label = label or g.name or f"order{g.order}"
    p, _ = g.p_and_n()
    if p == 2:
        raise PreconditionFailed("needs p odd")
    lattice = enumerate_subgroups(g) if lattice is None else lattice
    meta, _ = is_metacyclic(g, lattice)
    if not meta:
        raise PreconditionFailed(f"{label} is not metacyclic")
    z = center(g)
    interval = upper_interval(lattice, z)
    report = cd_lattice(g, lattice)
    same = {h.mask for h in interval} == {h.mask for h in report.cd_members}
    bad_index = [h for h in interval if g.order * z.size != h.size * centralizer(g, h).size]
    expected = f"CD = [G/Z], {len(interval)} members; |G/Z| = |H/Z||C(H)/Z| on all"
    if same and not bad_index:
        actual = expected
    else:
        actual = (f"CD has {len(report.cd_members)} members, [G/Z] has {len(interval)}; "
                  f"index identity fails on {len(bad_index)}")
    return claim("yxh-interval", label, expected, actual, interval_size=len(interval))


# counting lemmas -----------------------------------------------------------

def _metacyclic_count(p: int, n: int, e: int, m: int) -> int:
    if m <= n - e:
        top = m + 1
    elif m <= e:
        top = n - e + 1
    else:
        top = n - m + 1
    return (p ** top - 1) // (p - 1)


def verify_counting_lemmas(g: FiniteGroup, label: str | None = None,
                           lattice: SubgroupLattice | None = None) -> list[ClaimResult]:
    """Apply each subgroup-counting lemma whose hypotheses ``g`` satisfies."""
    label = label or g.name or f"order{g.order}"
    p, n = g.p_and_n()
    lattice = enumerate_subgroups(g) if lattice is None else lattice
    s = subgroup_counts(lattice, p)
    cyclic = g.exponent == g.order
    max_class_2 = p == 2 and n >= 3 and is_maximal_class(g)
    meta, _ = is_metacyclic(g, lattice)
    out: list[ClaimResult] = []

    # s_k = 1 + p (mod p^2)
    if cyclic or max_class_2:
        out.append(skipped("lemma-2.5", label, "cyclic or a 2-group of maximal class"))
    elif n < 2:
        out.append(skipped("lemma-2.5", label, "no 0 < k < n"))
    else:
        for k in range(1, n):
            out.append(claim("lemma-2.5", label, (1 + p) % (p * p), s[k] % (p * p),
                             note=f"s_{k} = {s[k]}"))

    # metacyclic counts; for p = 2 only abelian groups are covered
    e = round(math.log(g.exponent, p))
    if not meta or cyclic:
        out.append(skipped("lemma-2.6", label, "not a noncyclic metacyclic group"))
    elif p == 2 and not g.is_abelian:
        out.append(skipped("lemma-2.6", label, "nonabelian metacyclic 2-group"))
    else:
        for m in range(1, n + 1):
            out.append(claim("lemma-2.6", label, _metacyclic_count(p, n, e, m), s[m],
                             note=f"s_{m}, n={n}, e={e}"))

    # s_k = 1 + p for some 2 <= k <= n-2 pins the group down
    hits = [k for k in range(2, n - 1) if s[k] == 1 + p] if n >= 4 else []
    if not hits:
        out.append(skipped("lemma-2.7", label, "no k in 2..n-2 with s_k = 1+p"))
    else:
        fp = fingerprint(g, lattice)
        if fp == _fp(fam.abelian(p, n - 1, 1)):
            actual = "abelian (p^(n-1), p)"
        elif fp == _fp(fam.modular(p, n - 1, 1)):
            actual = "M_p(n-1,1)"
        elif p == 2 and hits == [2] and meta:
            actual = "p=2, k=2, metacyclic"
        else:
            actual = "none of the three cases"
        out.append(ClaimResult("lemma-2.7", label, "one of the three cases", actual,
                               actual != "none of the three cases", note=f"k in {hits}"))

    # s_1 = 1 means cyclic or generalized quaternion; s_m = 1 (1<m<n) means cyclic
    if s[1] == 1:
        if cyclic:
            actual = "cyclic"
        elif p == 2 and n >= 3 and fingerprint(g, lattice) == _fp(fam.quaternion(n)):
            actual = "generalized quaternion"
        else:
            actual = "neither"
        out.append(ClaimResult("lemma-2.10", label, "cyclic or generalized quaternion", actual,
                               actual != "neither", note="s_1 = 1"))
    else:
        out.append(skipped("lemma-2.10", label, "s_1 > 1"))
    for m in range(2, n):
        if s[m] == 1:
            out.append(claim("lemma-2.10", label, True, cyclic, note=f"s_{m} = 1 forces cyclic"))
    return out


# 3-groups of maximal class -------------------------------------------------

def g1_subgroup(g: FiniteGroup) -> Subgroup:
    """``G_1 = C_G(G_2/G_4)``, computed in ``G/G_4`` and pulled back."""
    series = list(derived_and_lcs(g).lower_central_series)
    while len(series) < 4:
        series.append(g.trivial)
    g2, g4 = series[1], series[3]
    q, proj = quotient_with_projection(g, g4)
    image = q.subgroup_from_indices(np.unique(proj[g2.indices]))
    cent = centralizer(q, image)
    return g.subgroup_from_flags(cent.flags[proj])


def verify_maximal_class_3group(g: FiniteGroup, label: str | None = None,
                                lattice: SubgroupLattice | None = None) -> ClaimResult:
    label = label or g.name or f"order{g.order}"
    p, n = g.p_and_n()
    if p != 3 or not 3 <= n <= 6 or not is_maximal_class(g):
        raise PreconditionFailed(f"{label} is not a 3-group of maximal class with 27 <= |G| <= 3^6")
    lattice = enumerate_subgroups(g) if lattice is None else lattice
    report = cd_lattice(g, lattice)
    cd = frozenset(h.mask for h in report.cd_members)
    g1 = g1_subgroup(g)
    z1 = centralizer(g, g1) & g1
    only_g1 = frozenset([g1.mask])
    g1_interval = frozenset(h.mask for h in lattice if z1 <= h <= g1)
    if n == 3:
        interval = frozenset(h.mask for h in upper_interval(lattice, center(g)))
        options = {"[G/Z]": interval}
    elif n == 4:
        options = {"{G1}": only_g1}
    elif n == 5:
        options = {"{G1}": only_g1,
                   "[G1/Z(G1)] + {G, Z(G)}": g1_interval | {g.whole.mask, center(g).mask}}
    else:
        options = {"{G1}": only_g1, "[G1/Z(G1)]": g1_interval}
    matched = [name for name, members in options.items() if members == cd]
    expected = " or ".join(options)
    actual = matched[0] if matched else f"other ({len(cd)} members)"
    return ClaimResult(f"jdl3-n{n}", label, expected, actual, bool(matched),
                       note=f"|CD| = {len(cd)}, |G1| = {g1.size}",
                       details={"cd_size": len(cd), "g1_size": g1.size})


# 2-group lemmas ------------------------------------------------------------

def verify_two_group_lemmas(catalog: Sequence[tuple[str, FiniteGroup]]) -> list[ClaimResult]:
    """For each nonabelian 2-group with δ <= 6: G in CD, |Z| in {2, 4}, and G is Q8, D8 or M_2(3,1)."""
    known = {
        "Q8": (_fp(fam.quaternion(3)), 1),
        "D8": (_fp(fam.dihedral(3)), 5),
        "M2(3,1)": (_fp(fam.modular(2, 3, 1)), 6),
    }
    out = []
    for label, g in catalog:
        pk = g.p_and_n()
        if pk[0] != 2 or g.is_abelian:
            raise PreconditionFailed(f"{label} is not a nonabelian 2-group")
        a = Analysis(label, g)
        d = a.delta
        if d > 6:
            out.append(skipped("lemma-2group", label, f"delta={d} > 6, lemmas vacuous"))
            continue
        z = center(g).size
        out.append(claim("lemma-lem6", label, True, a.report.contains(g.whole)))
        out.append(claim("lemma-cc", label, True, z in (2, 4) and (z != 4 or g.order <= 64),
                         note=f"|Z| = {z}"))
        fp = fingerprint(g, a.lattice)
        match = next((name for name, (kfp, _) in known.items() if kfp == fp), None)
        out.append(ClaimResult("lemma-zhu3", label, "Q8, D8 or M2(3,1)", match or "other",
                               match is not None, note=f"delta={d}"))
        if match:
            out.append(claim("lemma-zhu3-delta", label, known[match][1], d))
    return out


# structural properties of CD ---------------------------------------------

def verify_cd_properties(g: FiniteGroup, label: str | None = None,
                         lattice: SubgroupLattice | None = None) -> list[ClaimResult]:
    """Per-group consequences: at most one order-p member, self-duality of sizes, δ >= 1, rank bound."""
    label = label or g.name or f"order{g.order}"
    lattice = enumerate_subgroups(g) if lattice is None else lattice
    report = cd_lattice(g, lattice)
    out = []
    if g.order == 1:
        out.append(claim("delta-positive", label, 0, report.delta))
        return out
    p, n = g.p_and_n()
    order_p = sum(1 for h in report.cd_members if h.size == p)
    out.append(claim("lemma-3.1", label, True, order_p <= 1, note=f"{order_p} of order p"))
    sizes = sorted(h.size for h in report.cd_members)
    dual = sorted(report.m_star // s for s in sizes)
    out.append(claim("cd-self-dual", label, sizes, dual))
    out.append(claim("delta-positive", label, True, report.delta >= 1, note=f"delta={report.delta}"))
    if report.delta <= p * p + p:
        rank = ranks_and_omega(g, lattice).rank
        extraspecial = [h for h in lattice
                        if h.size == p ** 3 and not g.is_abelian_subgroup(h)
                        and (g.element_orders[h.indices] <= p).all()]
        out.append(claim("lemma-3.2", label, True, rank <= 2 and not extraspecial,
                         note=f"rank={rank}, exponent-p nonabelian p^3 subgroups: {len(extraspecial)}"))
    else:
        out.append(skipped("lemma-3.2", label, f"delta={report.delta} > p^2+p"))
    return out


# appendix criterion --------------------------------------------------------

APPENDIX = "appendix"
TRUE_DELTA = "true_delta"


def appendix_scan(groups: Iterable[tuple[str, FiniteGroup]], bound: int, mode: str = APPENDIX,
                  nonabelian_only: bool = False) -> list[ClaimResult]:
    """Select groups by the appendix criterion or by true δ, flagging divergence.

    The appendix criterion counts ``K`` subgroups in total and ``S`` with
    measure ``|G|*|Z(G)|`` and selects when ``K - S <= bound``. ``K - S``
    equals δ exactly when ``G`` lies in its own CD lattice. In each row
    ``actual`` is the quantity ``mode`` selects on and ``expected`` the other
    one, so ``passed`` is False exactly on the groups where they diverge.
    ``details["selected"]`` is the selection under ``mode``.
    """
    if mode not in (APPENDIX, TRUE_DELTA):
        raise ValueError(f"mode must be {APPENDIX!r} or {TRUE_DELTA!r}")
    out = []
    for label, g in groups:
        if nonabelian_only and g.is_abelian:
            continue
        a = Analysis(label, g)
        target = g.order * center(g).size
        k = len(a.lattice)
        s = sum(1 for h in a.lattice if h.size * centralizer(g, h).size == target)
        by_appendix = k - s <= bound
        by_delta = a.delta <= bound
        if mode == APPENDIX:
            expected, actual, selected = a.delta, k - s, by_appendix
        else:
            expected, actual, selected = k - s, a.delta, by_delta
        note = ""
        if k - s != a.delta:
            note = "G not in CD(G): K-S differs from delta"
            if by_appendix != by_delta:
                note += "; selections differ"
        out.append(ClaimResult(
            "appendix-scan", label, expected, actual, expected == actual, note,
            details={"order": g.order, "K": k, "S": s, "K-S": k - s, "delta": a.delta,
                     "m_star": a.report.m_star, "G_measure": target,
                     "selected": selected, "selected_appendix": by_appendix,
                     "selected_delta": by_delta},
        ))
    return out
