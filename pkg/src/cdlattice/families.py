"""Named p-groups built from explicit normal forms."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadParameters
from .group import (
    FiniteGroup,
    build_from_permutation_generators,
    build_from_table,
    central_product,
    direct_product,
    prime_power,
)


class Family(enum.Enum):
    CYCLIC = "cyclic"
    ABELIAN_RANK2 = "abelian"
    QUATERNION = "quaternion"
    DIHEDRAL = "dihedral"
    SEMIDIHEDRAL = "semidihedral"
    MODULAR = "modular"
    EXTRASPECIAL_TYPE = "extraspecial"
    CENTRAL_PRODUCT_D8C4 = "d8c4"
    CENTRAL_PRODUCT_MP111CP = "mp111cp"
    WREATH_C3C3 = "wreath"


# parameters each family reads, in canonical order
_PARAMS = {
    Family.CYCLIC: ("p", "k"),
    Family.ABELIAN_RANK2: ("p", "s", "t"),
    Family.QUATERNION: ("n",),
    Family.DIHEDRAL: ("n",),
    Family.SEMIDIHEDRAL: ("n",),
    Family.MODULAR: ("p", "n", "m"),
    Family.EXTRASPECIAL_TYPE: ("p", "n", "m"),
    Family.CENTRAL_PRODUCT_D8C4: (),
    Family.CENTRAL_PRODUCT_MP111CP: ("p", "n"),
    Family.WREATH_C3C3: (),
}


def _is_prime(p: int) -> bool:
    pk = prime_power(p)
    return pk is not None and pk[1] == 1


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    p: int = 2
    n: int = 0
    m: int = 0
    k: int = 0
    s: int = 0
    t: int = 0

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family(self.family))
        if self.family in (Family.QUATERNION, Family.DIHEDRAL, Family.SEMIDIHEDRAL,
                           Family.CENTRAL_PRODUCT_D8C4):
            object.__setattr__(self, "p", 2)
        elif self.family is Family.WREATH_C3C3:
            object.__setattr__(self, "p", 3)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Read the canonical string form, e.g. ``modular:p=3,n=2,m=1``."""
        name, _, rest = text.strip().partition(":")
        try:
            family = Family(name.strip().lower())
        except ValueError:
            known = ", ".join(f.value for f in Family)
            raise BadParameters(f"unknown family {name!r}; expected one of {known}") from None
        values = {}
        for item in filter(None, (x.strip() for x in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq or not re.fullmatch(r"\d+", val.strip()):
                raise BadParameters(f"malformed parameter {item!r}")
            key = key.strip()
            if key not in _PARAMS[family]:
                raise BadParameters(f"family {family.value} takes no parameter {key!r}")
            values[key] = int(val)
        missing = [k for k in _PARAMS[family] if k not in values]
        if missing:
            raise BadParameters(f"family {family.value} is missing {', '.join(missing)}")
        spec = cls(family, **values)
        spec.validate()
        return spec

    def __str__(self) -> str:
        params = ",".join(f"{k}={getattr(self, k)}" for k in _PARAMS[self.family])
        return f"{self.family.value}:{params}" if params else self.family.value

    def validate(self) -> None:
        f, p = self.family, self.p
        if "p" in _PARAMS[f] and not _is_prime(p):
            raise BadParameters(f"p={p} is not prime")
        if f is Family.CYCLIC and self.k < 1:
            raise BadParameters("cyclic needs k >= 1")
        if f is Family.ABELIAN_RANK2 and not self.s >= self.t >= 1:
            raise BadParameters("abelian needs s >= t >= 1")
        if f in (Family.QUATERNION, Family.DIHEDRAL) and self.n < 3:
            raise BadParameters(f"{f.value} needs n >= 3")
        if f is Family.SEMIDIHEDRAL and self.n < 4:
            raise BadParameters("semidihedral needs n >= 4")
        if f is Family.MODULAR:
            if self.n < 2 or self.m < 1:
                raise BadParameters("modular needs n >= 2 and m >= 1")
            if p == 2 and self.n < 3:
                raise BadParameters("modular with p = 2 needs n >= 3")
        if f is Family.EXTRASPECIAL_TYPE:
            if p == 2:
                raise BadParameters("extraspecial needs p odd")
            if not self.n >= self.m >= 1:
                raise BadParameters("extraspecial needs n >= m >= 1")
        if f is Family.CENTRAL_PRODUCT_MP111CP:
            if p == 2:
                raise BadParameters("mp111cp needs p odd")
            if self.n < 3:
                raise BadParameters("mp111cp needs n >= 3")

    @property
    def order(self) -> int:
        f, p = self.family, self.p
        return {
            Family.CYCLIC: lambda: p ** self.k,
            Family.ABELIAN_RANK2: lambda: p ** (self.s + self.t),
            Family.QUATERNION: lambda: 2 ** self.n,
            Family.DIHEDRAL: lambda: 2 ** self.n,
            Family.SEMIDIHEDRAL: lambda: 2 ** self.n,
            Family.MODULAR: lambda: p ** (self.n + self.m),
            Family.EXTRASPECIAL_TYPE: lambda: p ** (self.n + self.m + 1),
            Family.CENTRAL_PRODUCT_D8C4: lambda: 16,
            Family.CENTRAL_PRODUCT_MP111CP: lambda: p ** self.n,
            Family.WREATH_C3C3: lambda: 81,
        }[f]()

    @property
    def label(self) -> str:
        f, p = self.family, self.p
        if f is Family.CYCLIC:
            return f"C{p ** self.k}"
        if f is Family.ABELIAN_RANK2:
            return f"C{p ** self.s}xC{p ** self.t}"
        if f is Family.QUATERNION:
            return f"Q{2 ** self.n}"
        if f is Family.DIHEDRAL:
            return f"D{2 ** self.n}"
        if f is Family.SEMIDIHEDRAL:
            return f"SD{2 ** self.n}"
        if f is Family.MODULAR:
            return f"M{p}({self.n},{self.m})"
        if f is Family.EXTRASPECIAL_TYPE:
            return f"M{p}({self.n},{self.m},1)"
        if f is Family.CENTRAL_PRODUCT_D8C4:
            return "D8*C4"
        if f is Family.CENTRAL_PRODUCT_MP111CP:
            return f"M{p}(1,1,1)*C{p ** (self.n - 2)}"
        return "C3wrC3"


def cyclic(p, k):
    return FamilySpec(Family.CYCLIC, p=p, k=k)


def abelian(p, s, t):
    return FamilySpec(Family.ABELIAN_RANK2, p=p, s=s, t=t)


def quaternion(n):
    return FamilySpec(Family.QUATERNION, n=n)


def dihedral(n):
    return FamilySpec(Family.DIHEDRAL, n=n)


def semidihedral(n):
    return FamilySpec(Family.SEMIDIHEDRAL, n=n)


def modular(p, n, m):
    return FamilySpec(Family.MODULAR, p=p, n=n, m=m)


def extraspecial(p, n, m):
    return FamilySpec(Family.EXTRASPECIAL_TYPE, p=p, n=n, m=m)


def mp111cp(p, n):
    return FamilySpec(Family.CENTRAL_PRODUCT_MP111CP, p=p, n=n)


D8C4 = FamilySpec(Family.CENTRAL_PRODUCT_D8C4)
WREATH = FamilySpec(Family.WREATH_C3C3)


# normal forms --------------------------------------------------------------

def _cyclic_table(q: int) -> np.ndarray:
    i = np.arange(q)
    return (i[:, None] + i[None, :]) % q


def _abelian2_table(p: int, s: int, t: int):
    qs, qt = p ** s, p ** t
    i, j = np.divmod(np.arange(qs * qt), qt)
    table = ((i[:, None] + i[None, :]) % qs) * qt + (j[:, None] + j[None, :]) % qt
    names = [f"({a},{b})" for a, b in zip(i, j)]
    return table, names


def _modular_table(p: int, n: int, m: int):
    """``a^i b^j`` stored at ``i*p^m + j``; ``b a = a^r b`` with ``r = 1 + p^(n-1)``."""
    qa, qb = p ** n, p ** m
    r = 1 + p ** (n - 1)
    rpow = np.array([pow(r, j, qa) for j in range(qb)], dtype=np.int64)
    i, j = np.divmod(np.arange(qa * qb), qb)
    ni = (i[:, None] + i[None, :] * rpow[j][:, None]) % qa
    nj = (j[:, None] + j[None, :]) % qb
    return ni * qb + nj, [f"a^{a} b^{b}" for a, b in zip(i, j)]


def _extraspecial_table(p: int, n: int, m: int):
    """Triples ``(i, j, k)`` with ``(i,j,k)(i',j',k') = (i+i', j+j', k+k'-j*i')``."""
    qa, qb = p ** n, p ** m
    idx = np.arange(qa * qb * p)
    ij, k = np.divmod(idx, p)
    i, j = np.divmod(ij, qb)
    ni = (i[:, None] + i[None, :]) % qa
    nj = (j[:, None] + j[None, :]) % qb
    nk = (k[:, None] + k[None, :] - j[:, None] * i[None, :]) % p
    return (ni * qb + nj) * p + nk, [f"a^{a} b^{b} c^{c}" for a, b, c in zip(i, j, k)]


def _dihedral_like_table(n: int, twist: int, square: int):
    """``x^i y^e`` stored at ``e*q + i`` with ``y x = x^twist y`` and ``y^2 = x^square``."""
    q = 2 ** (n - 1)
    e, i = np.divmod(np.arange(2 * q), q)
    shift = np.where(e[:, None] == 1, twist, 1) * i[None, :]
    extra = np.where((e[:, None] == 1) & (e[None, :] == 1), square, 0)
    ni = (i[:, None] + shift + extra) % q
    ne = (e[:, None] + e[None, :]) % 2
    return ne * q + ni, [f"x^{a} y^{b}" for a, b in zip(i, e)]


WREATH_GENERATORS = ("(1 2 3)", "(1 4 7)(2 5 8)(3 6 9)")
# <a, b | a^4 = b^4 = 1, a^b = a^-1>
M2_2_2_GENERATORS = ("(1 2 3 4)", "(2 4)(5 6 7 8)")
# <a, b | a^4 = b^2 = c^2 = 1, [a, b] = c central>, acting on the cosets of <b>
M2_2_1_1_GENERATORS = ("(1 3 5 7)(2 4 6 8)", "(3 4)(7 8)")


@lru_cache(maxsize=None)
def construct_family(spec: FamilySpec) -> FiniteGroup:
    """Build the group a :class:`FamilySpec` names; results are cached."""
    spec.validate()
    f, p = spec.family, spec.p
    label = spec.label
    if f is Family.CYCLIC:
        q = p ** spec.k
        return build_from_table(q, _cyclic_table(q), [f"a^{i}" for i in range(q)], label)
    if f is Family.ABELIAN_RANK2:
        table, names = _abelian2_table(p, spec.s, spec.t)
    elif f is Family.MODULAR:
        table, names = _modular_table(p, spec.n, spec.m)
    elif f is Family.EXTRASPECIAL_TYPE:
        table, names = _extraspecial_table(p, spec.n, spec.m)
    elif f is Family.QUATERNION:
        table, names = _dihedral_like_table(spec.n, -1, 2 ** (spec.n - 2))
    elif f is Family.DIHEDRAL:
        table, names = _dihedral_like_table(spec.n, -1, 0)
    elif f is Family.SEMIDIHEDRAL:
        table, names = _dihedral_like_table(spec.n, 2 ** (spec.n - 2) - 1, 0)
    elif f is Family.CENTRAL_PRODUCT_D8C4:
        d8 = construct_family(dihedral(3))
        c4 = construct_family(cyclic(2, 2))
        return central_product(d8, c4, 2, 2, name=label)   # x^2 ~ g^2
    elif f is Family.CENTRAL_PRODUCT_MP111CP:
        base = construct_family(extraspecial(p, 1, 1))
        cyc = construct_family(cyclic(p, spec.n - 2))
        return central_product(base, cyc, 1, p ** (spec.n - 3), name=label)   # c ~ g^(p^(n-3))
    else:
        return build_from_permutation_generators(9, WREATH_GENERATORS, name=label)
    return build_from_table(table.shape[0], table, names, label)


def order16_catalog() -> list[tuple[str, FiniteGroup]]:
    """The fourteen groups of order 16: five abelian, nine nonabelian."""
    c2 = construct_family(cyclic(2, 1))
    d8 = construct_family(dihedral(3))
    q8 = construct_family(quaternion(3))
    c4xc2 = construct_family(abelian(2, 2, 1))
    c2xc2 = construct_family(abelian(2, 1, 1))
    entries = [
        ("C16", construct_family(cyclic(2, 4))),
        ("C8xC2", construct_family(abelian(2, 3, 1))),
        ("C4xC4", construct_family(abelian(2, 2, 2))),
        ("C4xC2xC2", direct_product(c4xc2, c2, name="C4xC2xC2")),
        ("C2^4", direct_product(c2xc2, c2xc2, name="C2^4")),
        ("Q16", construct_family(quaternion(4))),
        ("D16", construct_family(dihedral(4))),
        ("SD16", construct_family(semidihedral(4))),
        ("M2(3,1)", construct_family(modular(2, 3, 1))),
        ("M2(2,2)", build_from_permutation_generators(8, M2_2_2_GENERATORS, name="M2(2,2)")),
        ("M2(2,1,1)", build_from_permutation_generators(8, M2_2_1_1_GENERATORS, name="M2(2,1,1)")),
        ("D8xC2", direct_product(d8, c2, name="D8xC2")),
        ("Q8xC2", direct_product(q8, c2, name="Q8xC2")),
        ("D8*C4", construct_family(D8C4)),
    ]
    return entries


def family_instances(max_order: int, primes=(2, 3, 5)) -> list[FamilySpec]:
    """Every family instance of order at most ``max_order`` for the given primes."""
    specs: list[FamilySpec] = []

    def fits(spec):
        return spec.order <= max_order

    for p in primes:
        k = 1
        while p ** k <= max_order:
            specs.append(cyclic(p, k))
            k += 1
        for s in range(1, 12):
            for t in range(1, s + 1):
                if p ** (s + t) <= max_order:
                    specs.append(abelian(p, s, t))
        for n in range(2 if p > 2 else 3, 12):
            for m in range(1, 12):
                if p ** (n + m) <= max_order:
                    specs.append(modular(p, n, m))
        if p > 2:
            for n in range(1, 12):
                for m in range(1, n + 1):
                    if p ** (n + m + 1) <= max_order:
                        specs.append(extraspecial(p, n, m))
            for n in range(4, 12):
                if p ** n <= max_order:
                    specs.append(mp111cp(p, n))
        if p == 2:
            for n in range(3, 12):
                if 2 ** n <= max_order:
                    specs.append(quaternion(n))
                    specs.append(dihedral(n))
                    if n >= 4:
                        specs.append(semidihedral(n))
            if fits(D8C4):
                specs.append(D8C4)
        if p == 3 and fits(WREATH):
            specs.append(WREATH)
    return specs


def builtin_corpus(max_order: int = 128, primes=(2, 3, 5)) -> list[tuple[str, FiniteGroup]]:
    """All built-in groups up to ``max_order``: family instances plus the order-16 catalog."""
    seen: dict[str, FiniteGroup] = {}
    for spec in family_instances(max_order, primes):
        seen.setdefault(spec.label, construct_family(spec))
    if 2 in primes and max_order >= 16:
        for label, grp in order16_catalog():
            seen.setdefault(label, grp)
    return sorted(seen.items(), key=lambda kv: (kv[1].order, kv[0]))
