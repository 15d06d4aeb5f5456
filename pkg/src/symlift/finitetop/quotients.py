"""Quotients SP_m(X) and F_m(X) of the product of a finite space.

Points of ``X^m`` are index tuples over ``range(n)``.  Subsets of ``X^m`` and of
the quotients are Python-int bitmasks over an enumeration of their elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from ..core import LABELS, f_canonical, sp_canonical
from ..partitions import choice_vectors
from .spaces import FiniteTopology, bits


class ProductSpace:
    def __init__(self, base: FiniteTopology, m: int):
        self.base = base
        self.m = m
        self.points = list(product(range(base.n), repeat=m))
        self.index = {p: i for i, p in enumerate(self.points)}
        self.full = (1 << len(self.points)) - 1
        mo = base.minimal_open
        self.minimal_open = [self.box(tuple(mo[c] for c in p)) for p in self.points]

    def box(self, factors) -> int:
        """Mask of the product ``U_1 x ... x U_m`` of base subsets."""
        out = 0
        for p in product(*(bits(u) for u in factors)):
            out |= 1 << self.index[p]
        return out

    def is_open(self, s: int) -> bool:
        return all(self.minimal_open[i] & ~s == 0 for i in bits(s))

    def basis(self):
        """Products of open sets of the base, as ``(factors, mask)``."""
        for factors in product(self.base.sorted_opens, repeat=self.m):
            yield factors, self.box(factors)

    def mask(self, pts) -> int:
        out = 0
        for p in pts:
            out |= 1 << self.index[p]
        return out


@dataclass
class QuotientSpace:
    """Quotient of a product space by a canonical-form map."""

    name: str
    product: ProductSpace
    elements: list
    class_of: list[int]
    members: list[int] = field(repr=False)

    @classmethod
    def build(cls, name, prod_space: ProductSpace, canon):
        elements, lookup, class_of = [], {}, []
        for p in prod_space.points:
            c = canon(p)
            if c not in lookup:
                lookup[c] = len(elements)
                elements.append(c)
            class_of.append(lookup[c])
        members = [0] * len(elements)
        for i, c in enumerate(class_of):
            members[c] |= 1 << i
        return cls(name, prod_space, elements, class_of, members)

    @property
    def size(self) -> int:
        return len(self.elements)

    def image(self, s: int) -> int:
        out = 0
        for i in bits(s):
            out |= 1 << self.class_of[i]
        return out

    def preimage(self, c: int) -> int:
        out = 0
        for k in bits(c):
            out |= self.members[k]
        return out

    def saturation(self, s: int) -> int:
        return self.preimage(self.image(s))

    def is_open(self, c: int) -> bool:
        """A set of classes is open iff its full preimage is open in the product."""
        return self.product.is_open(self.preimage(c))

    def minimal_open(self, k: int) -> int:
        c = 1 << k
        while True:
            grown = 0
            for i in bits(self.preimage(c)):
                grown |= self.product.minimal_open[i]
            nxt = self.image(grown) | c
            if nxt == c:
                return c
            c = nxt

    def topology(self) -> FiniteTopology:
        return FiniteTopology.from_minimal_opens(
            self.size, [self.minimal_open(k) for k in range(self.size)])


def _permuted_copies(prod_space: ProductSpace, s: int) -> int:
    """Union over all coordinate permutations of the image of ``s``."""
    out = 0
    pts = [prod_space.points[i] for i in bits(s)]
    for sigma in permutations(range(prod_space.m)):
        out |= prod_space.mask(tuple(p[j] for j in sigma) for p in pts)
    return out


def _remultiplied(prod_space: ProductSpace, s: int, choice) -> int:
    """Image of ``s`` under the piece maps selected by one partition per part-count class.

    A tuple with ``k`` distinct values, read in order of first appearance, is
    refilled with the block sizes of the chosen ``k``-part partition and then
    spread over every arrangement of positions.
    """
    m = prod_space.m
    by_parts = {tau.n_parts: tau for tau in choice}
    out = 0
    for i in bits(s):
        p = prod_space.points[i]
        distinct = list(dict.fromkeys(p))
        tau = by_parts[len(distinct)]
        prim = tuple(v for v, size in zip(distinct, tau.parts) for _ in range(size))
        for sigma in set(permutations(range(m))):
            out |= 1 << prod_space.index[tuple(prim[j] for j in sigma)]
    return out


@dataclass
class QuotientChecks:
    basis_opens: int = 0
    sp_open_failures: list = field(default_factory=list)
    f_open_failures: list = field(default_factory=list)
    sp_saturation_failures: list = field(default_factory=list)
    f_saturation_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.sp_open_failures or self.f_open_failures
                    or self.sp_saturation_failures or self.f_saturation_failures)

    def to_json(self):
        return {
            "basis_opens": self.basis_opens,
            "sp_map_open": not self.sp_open_failures,
            "f_map_open": not self.f_open_failures,
            "sp_saturation": not self.sp_saturation_failures,
            "f_saturation": not self.f_saturation_failures,
            "failures": (self.sp_open_failures + self.f_open_failures
                         + self.sp_saturation_failures + self.f_saturation_failures)[:5],
        }


@dataclass
class QuotientBuild:
    sp_space: QuotientSpace
    f_space: QuotientSpace
    checks: QuotientChecks | None


def build_quotients(t: FiniteTopology, m: int, check: bool = True) -> QuotientBuild:
    """Build SP_m and F_m of ``t`` with quotient topologies; optionally audit the maps."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if t.n ** m > 10 ** 6:
        raise ValueError(f"|X|^m = {t.n ** m} exceeds the 10^6 bound")
    prod_space = ProductSpace(t, m)
    sp = QuotientSpace.build("SP", prod_space, lambda p: sp_canonical(p, LABELS))
    fq = QuotientSpace.build("F", prod_space, lambda p: f_canonical(p, LABELS))
    if not check:
        return QuotientBuild(sp, fq, None)

    checks = QuotientChecks()
    choices = choice_vectors(m)
    for factors, v in prod_space.basis():
        checks.basis_opens += 1
        where = [bits(u) for u in factors]
        if not sp.is_open(sp.image(v)):
            checks.sp_open_failures.append({"map": "sp", "basis_open": where})
        if not fq.is_open(fq.image(v)):
            checks.f_open_failures.append({"map": "f", "basis_open": where})
        permuted = _permuted_copies(prod_space, v)
        if sp.saturation(v) != permuted:
            checks.sp_saturation_failures.append({"map": "sp", "basis_open": where})
        rebuilt = 0
        for choice in choices:
            rebuilt |= _remultiplied(prod_space, permuted, choice)
        if fq.saturation(v) != rebuilt:
            checks.f_saturation_failures.append({"map": "f", "basis_open": where})
    return QuotientBuild(sp, fq, checks)
