"""Complete subgroup lattices and the counting quantities derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BudgetExceeded, NotInLattice, NotPGroup
from .group import (
    FiniteGroup,
    Subgroup,
    check_order_cap,
    derived_and_lcs,
    prime_power,
)

DEFAULT_SUBGROUP_BUDGET = 10 ** 6


@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups of a group, sorted by ``(size, members)``.

    ``hasse[i]`` lists the indices of the subgroups covering ``subgroups[i]``.
    """

    parent_order: int
    subgroups: tuple[Subgroup, ...]
    hasse: tuple[tuple[int, ...], ...]
    size_counts: dict = field(compare=False)

    @property
    def total_count(self) -> int:
        return len(self.subgroups)

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __contains__(self, h: Subgroup) -> bool:
        return h.mask in self._position

    @cached_property
    def _position(self) -> dict[int, int]:
        return {h.mask: i for i, h in enumerate(self.subgroups)}

    def index(self, h: Subgroup) -> int:
        try:
            return self._position[h.mask]
        except KeyError:
            raise NotInLattice("subgroup is not in this lattice") from None

    def lower_covers(self, i: int) -> list[int]:
        return [j for j, ups in enumerate(self.hasse) if i in ups]

    def maximal_subgroups(self) -> list[Subgroup]:
        return [self.subgroups[j] for j in self.lower_covers(len(self.subgroups) - 1)]


def _cyclic_subgroups(g: FiniteGroup) -> list[tuple[Subgroup, int]]:
    """One ``(<x>, x)`` pair per cyclic subgroup."""
    covered = np.zeros(g.order, dtype=bool)
    orders = g.element_orders
    out = []
    for x in range(g.order):
        if covered[x]:
            continue
        c = g.span([x])
        g.remember_generators(c, [x] if x else [])
        idx = c.indices
        covered[idx[orders[idx] == c.size]] = True
        out.append((c, x))
    return out


def _hasse(subgroups: list[Subgroup]) -> list[tuple[int, ...]]:
    masks = [h.mask for h in subgroups]
    sizes = [h.size for h in subgroups]
    n = len(subgroups)
    covers: list[tuple[int, ...]] = []
    for i in range(n):
        mi = masks[i]
        found: list[int] = []
        for j in range(i + 1, n):
            if sizes[j] == sizes[i] or mi & ~masks[j]:
                continue
            mj = masks[j]
            if any(masks[c] & ~mj == 0 for c in found):
                continue
            found.append(j)
        covers.append(tuple(found))
    return covers


def enumerate_subgroups(g: FiniteGroup, budget: int = DEFAULT_SUBGROUP_BUDGET) -> SubgroupLattice:
    """Every subgroup of ``g``.

    Starts from the cyclic subgroups and joins each newly found subgroup with
    every cyclic subgroup it does not contain, until nothing new appears.
    Every subgroup is a join of cyclic ones, so the fixpoint is complete.
    """
    check_order_cap(g.order)
    cyclic = _cyclic_subgroups(g)
    known: dict[int, Subgroup] = {}
    frontier: list[Subgroup] = []
    for c, _ in cyclic:
        if c.mask not in known:
            known[c.mask] = c
            frontier.append(c)
    while frontier:
        nxt: list[Subgroup] = []
        for h in frontier:
            if h.size == g.order:
                continue
            base_gens = g.generators(h)
            for c, x in cyclic:
                if c.mask & ~h.mask == 0:
                    continue
                k = g.subgroup_from_flags(g._span([x], h, base_gens))
                if k.mask in known:
                    continue
                g.remember_generators(k, tuple(base_gens) + (x,))
                known[k.mask] = k
                nxt.append(k)
                if len(known) > budget:
                    raise BudgetExceeded(f"more than {budget} subgroups")
        frontier = nxt
    subgroups = sorted(known.values(), key=Subgroup.sort_key)
    counts: dict[int, int] = {}
    for h in subgroups:
        counts[h.size] = counts.get(h.size, 0) + 1
    return SubgroupLattice(g.order, tuple(subgroups), tuple(_hasse(subgroups)), counts)


def subgroup_counts(lattice: SubgroupLattice, p: int) -> list[int]:
    """``[s_0, ..., s_n]`` where ``s_k`` counts subgroups of order ``p**k``."""
    pk = prime_power(lattice.parent_order)
    if lattice.parent_order == 1:
        return [1]
    if pk is None or pk[0] != p:
        raise NotPGroup(f"order {lattice.parent_order} is not a power of {p}")
    return [lattice.size_counts.get(p ** k, 0) for k in range(pk[1] + 1)]


@dataclass(frozen=True)
class RankInfo:
    rank: int
    normal_rank: int
    omega1: Subgroup


def is_elementary_abelian(g: FiniteGroup, h: Subgroup, p: int) -> bool:
    return bool((g.element_orders[h.indices] <= p).all()) and g.is_abelian_subgroup(h)


def ranks_and_omega(g: FiniteGroup, lattice: SubgroupLattice) -> RankInfo:
    p, _ = g.p_and_n()
    rank = normal_rank = 0
    for h in lattice:
        if not is_elementary_abelian(g, h, p):
            continue
        k = round(math.log(h.size, p))
        rank = max(rank, k)
        if k > normal_rank and g.is_normal(h):
            normal_rank = k
    small = np.flatnonzero(g.element_orders <= p)
    return RankInfo(rank, normal_rank, g.subgroup_generated(small))


def is_metacyclic(g: FiniteGroup, lattice: SubgroupLattice) -> tuple[bool, Subgroup | None]:
    """Whether some normal cyclic ``N`` has ``G/N`` cyclic; the witness is the smallest such ``N``."""
    cyclic = [h for h in lattice if g.is_cyclic_subgroup(h)]
    for n in cyclic:
        if not g.is_normal(n):
            continue
        # G/N is cyclic iff some cyclic C has |CN| = |G|
        for c in cyclic:
            inter = (c.mask & n.mask).bit_count()
            if c.size * n.size == g.order * inter:
                return True, n
    return False, None


def nilpotency_class(g: FiniteGroup) -> int:
    return derived_and_lcs(g).nilpotency_class


def is_maximal_class(g: FiniteGroup) -> bool:
    """Order ``p^n`` with ``n >= 2`` and nilpotency class ``n - 1``."""
    if g.order == 1:
        raise NotPGroup("the trivial group has no prime")
    _, n = g.p_and_n()
    if n < 2:
        return False
    return nilpotency_class(g) == n - 1


def upper_interval(lattice: SubgroupLattice, base: Subgroup) -> list[Subgroup]:
    """All subgroups containing ``base``, in canonical order."""
    if base not in lattice:
        raise NotInLattice("base subgroup is not in the lattice")
    return [h for h in lattice if base <= h]
