"""Finite groups stored as dense multiplication tables.

Elements are the integers ``0..order-1`` and index 0 is always the identity.
Subgroups are bit masks (plain Python ints) over those indices.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadDimensions,
    NotAGroup,
    NotAPermutation,
    NotCentral,
    NotNormal,
    NotPGroup,
    OrderCapExceeded,
    OrderMismatch,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 2048
WARN_ORDER = 512
EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 512
ORDER_CAP_ENV = "CDLATTICE_MAX_ORDER"


def max_order() -> int:
    """Global order cap; overridable through ``CDLATTICE_MAX_ORDER``."""
    value = os.environ.get(ORDER_CAP_ENV)
    return int(value) if value else DEFAULT_MAX_ORDER


def check_order_cap(order: int, cap: int | None = None) -> None:
    cap = max_order() if cap is None else cap
    if order > cap:
        raise OrderCapExceeded(f"order {order} exceeds the cap {cap}")
    if order > WARN_ORDER:
        log.warning("order %d is above %d; dense tables get large", order, WARN_ORDER)


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


# bit masks ---------------------------------------------------------------

def bool_to_mask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags.astype(bool), bitorder="little").tobytes(), "little")


def indices_to_mask(indices: Iterable[int], n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    flags[np.fromiter(indices, dtype=np.int64)] = True
    return bool_to_mask(flags)


def mask_to_bool(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


class Subgroup:
    """A subgroup of a parent group, stored as a membership bit mask.

    Instances compare and hash by ``(parent_order, mask)``. They do not hold
    a reference to the parent; every operation takes the group explicitly.
    """

    __slots__ = ("parent_order", "mask", "size", "_indices")

    def __init__(self, parent_order: int, mask: int):
        self.parent_order = parent_order
        self.mask = mask
        self.size = mask.bit_count()
        self._indices = None

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            idx = np.flatnonzero(mask_to_bool(self.mask, self.parent_order))
            idx.setflags(write=False)
            self._indices = idx
        return self._indices

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(int(i) for i in self.indices)

    @property
    def flags(self) -> np.ndarray:
        return mask_to_bool(self.mask, self.parent_order)

    def sort_key(self):
        return (self.size, self.members)

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent_order, self.mask & other.mask)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent_order == other.parent_order
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.parent_order, self.mask))

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        shown = self.members if self.size <= 12 else self.members[:12] + ("...",)
        return f"Subgroup(size={self.size}, members={shown})"


@dataclass(frozen=True)
class StructureScalars:
    exponent: int
    min_generators: int
    nilpotency_class: int
    lower_central_series: tuple[Subgroup, ...]


class FiniteGroup:
    """A validated finite group.

    Build instances through :func:`build_from_table` or one of the other
    constructors; the initializer trusts its arguments.
    """

    def __init__(self, table: np.ndarray, inverse: np.ndarray, element_names=None, name=None):
        table = np.ascontiguousarray(table, dtype=np.int64)
        inverse = np.ascontiguousarray(inverse, dtype=np.int64)
        table.setflags(write=False)
        inverse.setflags(write=False)
        self.table = table
        self.inverse = inverse
        self.order = int(table.shape[0])
        self.element_names = None if element_names is None else tuple(element_names)
        self.name = name
        self._gens_cache: dict[int, tuple[int, ...]] = {}
        self._orders = None
        self._center = None

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"FiniteGroup({label}order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, g: int, k: int) -> int:
        result, base = 0, g
        if k < 0:
            base, k = self.inv(g), -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        t = self.table
        return int(t[t[self.inverse[a], self.inverse[b]], t[a, b]])

    def element_name(self, g: int) -> str:
        return self.element_names[g] if self.element_names else str(g)

    # element orders -----------------------------------------------------

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            ident = np.arange(n)
            orders = np.zeros(n, dtype=np.int64)
            cur = ident.copy()
            k = 1
            while True:
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
                if orders.all():
                    break
                cur = self.table[cur, ident]
                k += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def element_order(self, g: int) -> int:
        return int(self.element_orders[g])

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @property
    def prime(self) -> int | None:
        pk = prime_power(self.order)
        return pk[0] if pk else None

    def p_and_n(self) -> tuple[int, int]:
        pk = prime_power(self.order)
        if pk is None:
            raise NotPGroup(f"order {self.order} is not a prime power")
        return pk

    # subgroups ----------------------------------------------------------

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self.order, (1 << self.order) - 1)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(self.order, 1)

    def subgroup_from_flags(self, flags: np.ndarray) -> Subgroup:
        return Subgroup(self.order, bool_to_mask(flags))

    def subgroup_from_indices(self, indices: Iterable[int]) -> Subgroup:
        return Subgroup(self.order, indices_to_mask(indices, self.order))

    def is_subgroup_mask(self, mask: int) -> bool:
        if not mask & 1:
            return False
        flags = mask_to_bool(mask, self.order)
        idx = np.flatnonzero(flags)
        return bool(flags[self.table[np.ix_(idx, idx)]].all())

    def _span(self, new_gens: Sequence[int], base: Subgroup | None = None,
              base_gens: Sequence[int] = ()) -> np.ndarray:
        """Membership flags of ``<base, new_gens>``.

        The subgroup is grown one right coset of ``base`` at a time: a coset
        representative ``y`` and a generator ``s`` give the coset ``base*(y*s)``.
        """
        t = self.table
        flags = np.zeros(self.order, dtype=bool)
        if base is None:
            members = np.zeros(1, dtype=np.int64)
        else:
            members = base.indices
        flags[members] = True
        gens = [int(s) for s in base_gens] + [int(s) for s in new_gens]
        if not any(not flags[s] for s in new_gens):
            return flags
        reps = [0]
        i = 0
        while i < len(reps):
            y = reps[i]
            i += 1
            for s in gens:
                z = int(t[y, s])
                if not flags[z]:
                    flags[t[members, z]] = True
                    reps.append(z)
        return flags

    def span(self, gens: Sequence[int], base: Subgroup | None = None) -> Subgroup:
        """The subgroup generated by ``base`` together with ``gens``."""
        base_gens = self.generators(base) if base is not None else ()
        return self.subgroup_from_flags(self._span(gens, base, base_gens))

    def subgroup_generated(self, elements: Iterable[int]) -> Subgroup:
        """Smallest subgroup containing ``elements``; adds only elements not yet covered."""
        current = self.trivial
        gens: list[int] = []
        for g in elements:
            g = int(g)
            if g in current:
                continue
            flags = self._span([g], current, gens)
            gens.append(g)
            current = self.subgroup_from_flags(flags)
            self._gens_cache.setdefault(current.mask, tuple(gens))
        return current

    def generators(self, h: Subgroup | None = None) -> tuple[int, ...]:
        """A short generating sequence, picked greedily by decreasing element order."""
        if h is None:
            h = self.whole
        cached = self._gens_cache.get(h.mask)
        if cached is not None:
            return cached
        idx = h.indices
        orders = self.element_orders[idx]
        candidates = idx[np.lexsort((idx, -orders))]
        current = self.trivial
        gens: list[int] = []
        for g in candidates:
            if current.size == h.size:
                break
            g = int(g)
            if g in current:
                continue
            current = self.subgroup_from_flags(self._span([g], current, gens))
            gens.append(g)
        result = tuple(gens)
        self._gens_cache[h.mask] = result
        return result

    def remember_generators(self, h: Subgroup, gens: Sequence[int]) -> None:
        self._gens_cache.setdefault(h.mask, tuple(int(g) for g in gens))

    def is_normal(self, h: Subgroup) -> bool:
        return normality_witness(self, h) is None

    def is_cyclic_subgroup(self, h: Subgroup) -> bool:
        return int(self.element_orders[h.indices].max()) == h.size

    def is_abelian_subgroup(self, h: Subgroup) -> bool:
        gens = list(self.generators(h))
        if len(gens) < 2:
            return True
        sub = self.table[np.ix_(gens, gens)]
        return bool(np.array_equal(sub, sub.T))

    def product_set(self, h: Subgroup, k: Subgroup) -> Subgroup:
        """The set ``HK = {hk}`` as a mask (it need not be a subgroup in general)."""
        flags = np.zeros(self.order, dtype=bool)
        flags[self.table[np.ix_(h.indices, k.indices)].ravel()] = True
        return Subgroup(self.order, bool_to_mask(flags))

    def join(self, h: Subgroup, k: Subgroup) -> Subgroup:
        if k <= h:
            return h
        if h <= k:
            return k
        return self.span(self.generators(k), base=h)


# construction ------------------------------------------------------------

def _find_identity(t: np.ndarray) -> int | None:
    n = t.shape[0]
    ident = np.arange(n)
    rows = np.flatnonzero((t == ident[None, :]).all(axis=1))
    for e in rows:
        if np.array_equal(t[:, e], ident):
            return int(e)
    return None


def _check_associative(t: np.ndarray, strict: bool, seed: int = 0) -> None:
    n = t.shape[0]
    if strict or n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            left = t[t[a]]          # (a*b)*c indexed [b, c]
            right = t[a][t]         # a*(b*c) indexed [b, c]
            bad = np.argwhere(left != right)
            if bad.size:
                b, c = (int(x) for x in bad[0])
                raise NotAGroup("multiplication is not associative", witness=(a, b, c))
        return
    rng = np.random.default_rng(seed)
    total = 10 * n * n
    chunk = 1 << 20
    for start in range(0, total, chunk):
        m = min(chunk, total - start)
        a, b, c = rng.integers(0, n, size=(3, m))
        bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
        if bad.size:
            i = bad[0]
            raise NotAGroup("multiplication is not associative",
                            witness=(int(a[i]), int(b[i]), int(c[i])))


def build_from_table(order: int, table, element_names=None, name=None, *,
                     strict: bool = False, cap: int | None = None) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    If the identity is not at index 0 it is swapped there (and the names
    follow). Associativity is checked exhaustively up to order 512 or when
    ``strict`` is set, otherwise on ``10*order**2`` random triples.
    """
    if order < 1:
        raise BadDimensions("order must be positive")
    try:
        t = np.array(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise BadDimensions(f"table is not a rectangular integer array: {exc}") from None
    if t.shape != (order, order):
        raise BadDimensions(f"table has shape {t.shape}, expected ({order}, {order})")
    check_order_cap(order, cap)
    if t.min() < 0 or t.max() >= order:
        bad = np.argwhere((t < 0) | (t >= order))[0]
        raise NotAGroup("table entry out of range", witness=tuple(int(x) for x in bad))
    e = _find_identity(t)
    if e is None:
        raise NotAGroup("no two-sided identity element")
    names = list(element_names) if element_names is not None else None
    if e != 0:
        perm = np.arange(order)
        perm[0], perm[e] = e, 0          # new index -> old index (a swap is its own inverse)
        t = perm[t[np.ix_(perm, perm)]]
        if names is not None:
            names[0], names[e] = names[e], names[0]
    ident = np.arange(order)
    sorted_rows = np.sort(t, axis=1)
    if not (sorted_rows == ident).all():
        g = int(np.flatnonzero(~(sorted_rows == ident).all(axis=1))[0])
        raise NotAGroup("row is not a permutation, so inverses fail", witness=(g,))
    sorted_cols = np.sort(t, axis=0)
    if not (sorted_cols == ident[:, None]).all():
        g = int(np.flatnonzero(~(sorted_cols == ident[:, None]).all(axis=0))[0])
        raise NotAGroup("column is not a permutation, so inverses fail", witness=(g,))
    inverse = np.argmax(t == 0, axis=1)
    _check_associative(t, strict)
    return FiniteGroup(t, inverse, names, name)


def _trusted(table: np.ndarray, name=None, element_names=None) -> FiniteGroup:
    """Wrap a table built by a constructor that guarantees the group axioms.

    Still goes through full validation; kept as one entry point so a
    constructor bug surfaces as NotAGroup rather than a wrong answer.
    """
    return build_from_table(table.shape[0], table, element_names, name)


def parse_cycles(text: str, degree: int) -> np.ndarray:
    """Parse cycle notation such as ``(1 2 3)(4 5)`` into 0-based images."""
    image = np.arange(degree)
    seen: set[int] = set()
    text = text.strip()
    if text in ("", "()"):
        return image
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise NotAPermutation(f"expected '(' at offset {pos} in {text!r}")
        end = text.find(")", pos)
        if end < 0:
            raise NotAPermutation(f"unclosed cycle in {text!r}")
        body = text[pos + 1:end].replace(",", " ").split()
        try:
            points = [int(x) for x in body]
        except ValueError:
            raise NotAPermutation(f"non-integer point in {text!r}") from None
        for x in points:
            if not 1 <= x <= degree:
                raise NotAPermutation(f"point {x} outside 1..{degree}")
            if x in seen:
                raise NotAPermutation(f"point {x} repeated in {text!r}")
            seen.add(x)
        for a, b in zip(points, points[1:] + points[:1]):
            image[a - 1] = b - 1
        pos = end + 1
    return image


def _as_image(gen, degree: int) -> np.ndarray:
    if isinstance(gen, str):
        return parse_cycles(gen, degree)
    arr = np.asarray(gen, dtype=np.int64)
    if arr.ndim == 1 and arr.shape == (degree,):
        # 1-based image list
        image = arr - 1
        if sorted(image.tolist()) != list(range(degree)):
            raise NotAPermutation(f"{gen!r} is not a bijection on 1..{degree}")
        return image
    raise NotAPermutation(f"cannot read {gen!r} as a permutation of degree {degree}")


def build_from_permutation_generators(degree: int, generators: Sequence, name=None, *,
                                      cap: int | None = None) -> FiniteGroup:
    """Close a set of permutations under composition.

    Generators are cycle strings like ``"(1 2 3)"`` or 1-based image lists.
    Products compose left to right: ``g*h`` applies ``g`` first. Elements are
    numbered in breadth-first discovery order from the identity.
    """
    if degree < 1:
        raise NotAPermutation("degree must be positive")
    cap = max_order() if cap is None else cap
    images = [_as_image(g, degree) for g in generators]
    perms = [np.arange(degree)]
    index = {perms[0].tobytes(): 0}
    right = [[] for _ in images]       # right[s][e] = index of e*s
    parent = [(-1, -1)]                # (parent index, generator) in the BFS tree
    i = 0
    while i < len(perms):
        e = perms[i]
        for s, img in enumerate(images):
            prod = img[e]              # apply e, then img
            key = prod.tobytes()
            j = index.get(key)
            if j is None:
                j = len(perms)
                if j >= cap:
                    raise OrderCapExceeded(f"permutation group exceeds the cap {cap}")
                index[key] = j
                perms.append(prod)
                parent.append((i, s))
            right[s].append(j)
        i += 1
    n = len(perms)
    check_order_cap(n, cap)
    right_arr = [np.asarray(r, dtype=np.int64) for r in right]
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for h in range(1, n):
        ph, s = parent[h]
        table[:, h] = right_arr[s][table[:, ph]]
    names = [_cycle_string(p) for p in perms]
    return build_from_table(n, table, names, name, cap=cap)


def _cycle_string(image: np.ndarray) -> str:
    seen = set()
    out = []
    for start in range(len(image)):
        if start in seen or image[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = int(image[start])
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = int(image[x])
        out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


# products and quotients --------------------------------------------------

def direct_product(g: FiniteGroup, h: FiniteGroup, name=None) -> FiniteGroup:
    """``G x H`` with ``(a, b)`` stored at index ``a*|H| + b``."""
    ng, nh = g.order, h.order
    check_order_cap(ng * nh)
    t = g.table[:, None, :, None] * nh + h.table[None, :, None, :]
    table = t.reshape(ng * nh, ng * nh)
    names = None
    if g.element_names or h.element_names:
        names = [f"({g.element_name(a)},{h.element_name(b)})" for a in range(ng) for b in range(nh)]
    if name is None and g.name and h.name:
        name = f"{g.name}x{h.name}"
    return _trusted(table, name, names)


def normality_witness(g: FiniteGroup, n: Subgroup) -> tuple[int, int] | None:
    """``(x, h)`` with ``x^-1 h x`` outside ``n``, or None when ``n`` is normal."""
    t, inv = g.table, g.inverse
    flags = n.flags
    idx = n.indices
    for x in g.generators():
        conj = t[t[inv[x], idx], x]
        bad = np.flatnonzero(~flags[conj])
        if bad.size:
            return int(x), int(idx[bad[0]])
    return None


def quotient_with_projection(g: FiniteGroup, n: Subgroup, name=None) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` together with the map sending each element to its coset index.

    Cosets are labelled by their least member; the quotient's elements are
    ordered by that representative, so the identity coset is index 0.
    """
    witness = normality_witness(g, n)
    if witness is not None:
        raise NotNormal("subgroup is not normal", witness=witness)
    reps = g.table[:, n.indices].min(axis=1)
    labels, projection = np.unique(reps, return_inverse=True)
    table = projection[g.table[np.ix_(labels, labels)]]
    return _trusted(table, name), projection


def quotient(g: FiniteGroup, n: Subgroup, name=None) -> FiniteGroup:
    return quotient_with_projection(g, n, name)[0]


def central_product(g: FiniteGroup, h: FiniteGroup, zg: int, zh: int, name=None) -> FiniteGroup:
    """Identify ``<zg>`` in ``G`` with ``<zh>`` in ``H`` via ``zg ~ zh``."""
    if zg not in center(g):
        raise NotCentral(f"element {zg} is not central in the first factor")
    if zh not in center(h):
        raise NotCentral(f"element {zh} is not central in the second factor")
    og, oh = g.element_order(zg), h.element_order(zh)
    if og != oh:
        raise OrderMismatch(f"identified elements have orders {og} and {oh}")
    if og == 1:
        raise OrderMismatch("identified elements must be nontrivial")
    prod = direct_product(g, h)
    diag = prod.span([zg * h.order + h.inv(zh)])
    return quotient(prod, diag, name)


def subgroup_as_group(g: FiniteGroup, h: Subgroup, name=None) -> tuple[FiniteGroup, np.ndarray]:
    """``H`` as a group in its own right, plus the embedding (new index -> old index)."""
    idx = h.indices
    lookup = np.full(g.order, -1, dtype=np.int64)
    lookup[idx] = np.arange(h.size)
    table = lookup[g.table[np.ix_(idx, idx)]]
    names = [g.element_name(int(i)) for i in idx] if g.element_names else None
    return _trusted(table, name, names), idx.copy()


# centralizers and series ---------------------------------------------------

def centralizer(g: FiniteGroup, h: Subgroup) -> Subgroup:
    """``C_G(H)``, tested against a generating set of ``H``."""
    gens = list(g.generators(h))
    if not gens:
        return g.whole
    t = g.table
    commutes = (t[:, gens] == t[gens, :].T).all(axis=1)
    return g.subgroup_from_flags(commutes)


def center(g: FiniteGroup) -> Subgroup:
    if g._center is None:
        g._center = centralizer(g, g.whole)
    return g._center


def commutator_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    """``[A, B]``, generated by every ``[x, y]`` with ``x`` in A and ``y`` in B."""
    t, inv = g.table, g.inverse
    x = a.indices[:, None]
    y = b.indices[None, :]
    comms = t[t[inv[x], inv[y]], t[x, y]]
    return g.subgroup_generated(np.unique(comms))


def lower_central_series(g: FiniteGroup) -> list[Subgroup]:
    series = [g.whole]
    while True:
        nxt = commutator_subgroup(g, series[-1], g.whole)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.size == 1:
            break
    return series


def frattini_subgroup_pgroup(g: FiniteGroup) -> Subgroup:
    """For a p-group: the subgroup generated by ``G'`` and all ``p``-th powers."""
    p, _ = g.p_and_n()
    derived = commutator_subgroup(g, g.whole, g.whole)
    powers = np.unique(_powers(g, p))
    return g.span(list(powers), base=derived)


def _powers(g: FiniteGroup, k: int) -> np.ndarray:
    cur = np.zeros(g.order, dtype=np.int64)
    ident = np.arange(g.order)
    for _ in range(k):
        cur = g.table[cur, ident]
    return cur


def derived_and_lcs(g: FiniteGroup) -> StructureScalars:
    """Exponent, ``d(G)``, nilpotency class and lower central series of a p-group."""
    if g.order == 1:
        return StructureScalars(1, 0, 0, (g.whole,))
    p, _ = g.p_and_n()
    series = lower_central_series(g)
    if series[-1].size != 1:
        raise NotPGroup("lower central series does not reach 1")
    phi = frattini_subgroup_pgroup(g)
    d = round(math.log(g.order // phi.size, p))
    return StructureScalars(g.exponent, d, len(series) - 1, tuple(series))
