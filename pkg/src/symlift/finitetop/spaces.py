"""Finite topological spaces on ``{0..n-1}`` with subsets encoded as bitmasks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def mask_of(elements) -> int:
    out = 0
    for i in elements:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class FiniteTopology:
    n: int
    opens: frozenset = field(compare=True)

    def __post_init__(self):
        full = (1 << self.n) - 1
        opens = frozenset(self.opens)
        if 0 not in opens or full not in opens:
            raise ValueError("a topology contains the empty set and the whole space")
        for a in opens:
            if a & ~full:
                raise ValueError(f"open set {a:b} is not a subset of the ground set")
            for b in opens:
                if a | b not in opens or a & b not in opens:
                    raise ValueError("open family is not closed under union and intersection")
        object.__setattr__(self, "opens", opens)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def sorted_opens(self) -> tuple[int, ...]:
        return tuple(sorted(self.opens))

    @cached_property
    def minimal_open(self) -> tuple[int, ...]:
        """Smallest open set containing each point."""
        out = []
        for x in range(self.n):
            m = self.full
            for u in self.opens:
                if u >> x & 1:
                    m &= u
            out.append(m)
        return tuple(out)

    def is_open(self, a: int) -> bool:
        return a in self.opens

    def is_closed(self, a: int) -> bool:
        return (self.full & ~a) in self.opens

    def interior(self, a: int) -> int:
        out = 0
        for u in self.opens:
            if u & ~a == 0:
                out |= u
        return out

    def closure(self, a: int) -> int:
        return self.full & ~self.interior(self.full & ~a)

    def boundary(self, a: int) -> int:
        return self.closure(a) & ~self.interior(a)

    def neighborhoods(self, x: int):
        return [u for u in self.sorted_opens if u >> x & 1]

    def boundary_interior(self, a: int) -> int:
        """Boundary points with some open neighborhood ``U`` where ``int(U - A)`` is empty."""
        out = 0
        for x in bits(self.boundary(a)):
            if any(self.interior(u & ~a) == 0 for u in self.neighborhoods(x)):
                out |= 1 << x
        return out

    def boundary_exterior(self, a: int) -> int:
        """Boundary points where every open neighborhood ``U`` has ``int(U - A)`` nonempty."""
        out = 0
        for x in bits(self.boundary(a)):
            if all(self.interior(u & ~a) != 0 for u in self.neighborhoods(x)):
                out |= 1 << x
        return out

    def boundary_operators(self, a: int) -> dict[str, int]:
        return {
            "interior": self.interior(a),
            "closure": self.closure(a),
            "boundary": self.boundary(a),
            "boundary_interior": self.boundary_interior(a),
            "boundary_exterior": self.boundary_exterior(a),
        }

    @cached_property
    def connected(self) -> bool:
        """No clopen set other than the empty set and the whole space."""
        return not any(0 < u < self.full and self.is_closed(u) for u in self.opens)

    @cached_property
    def hausdorff(self) -> bool:
        mo = self.minimal_open
        return all(mo[x] & mo[y] == 0 for x in range(self.n) for y in range(x + 1, self.n))

    def to_json(self):
        return {"n": self.n, "opens": [bits(u) for u in self.sorted_opens]}

    @classmethod
    def from_json(cls, doc) -> FiniteTopology:
        return cls(doc["n"], frozenset(mask_of(u) for u in doc["opens"]))

    @classmethod
    def discrete(cls, n: int) -> FiniteTopology:
        return cls(n, frozenset(range(1 << n)))

    @classmethod
    def indiscrete(cls, n: int) -> FiniteTopology:
        return cls(n, frozenset({0, (1 << n) - 1}))

    @classmethod
    def from_minimal_opens(cls, n: int, minimal) -> FiniteTopology:
        """Topology whose opens are the unions of the given minimal neighborhoods."""
        opens = {0}
        for u in minimal:
            opens |= {v | u for v in opens}
        return cls(n, frozenset(opens))


def sort_key(t: FiniteTopology):
    return (len(t.opens), t.sorted_opens)


def _preorders(n):
    """Reflexive transitive relations on ``range(n)`` as lists of up-set masks."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for choice in product((0, 1), repeat=len(pairs)):
        above = [1 << i for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c:
                above[i] |= 1 << j
        if all(above[j] & ~above[i] == 0 for i in range(n) for j in bits(above[i])):
            yield above


_TOPOLOGY_CACHE: dict[int, tuple[FiniteTopology, ...]] = {}


def enumerate_topologies(n: int) -> tuple[FiniteTopology, ...]:
    """Every topology on ``{0..n-1}``, ordered by number of opens then by sorted open masks.

    Built from the correspondence with preorders (opens are the up-sets).
    """
    if not isinstance(n, int) or not 1 <= n <= 4:
        raise ValueError(f"n must be in 1..4, got {n!r}")
    if n not in _TOPOLOGY_CACHE:
        tops = {FiniteTopology.from_minimal_opens(n, above) for above in _preorders(n)}
        _TOPOLOGY_CACHE[n] = tuple(sorted(tops, key=sort_key))
    return _TOPOLOGY_CACHE[n]


def continuous(f, source: FiniteTopology, target: FiniteTopology) -> bool:
    """``f`` maps source points to target points; continuity by preimages of opens."""
    return all(preimage(f, v) in source.opens for v in target.opens)


def preimage(f, b: int) -> int:
    out = 0
    for y, fy in enumerate(f):
        if b >> fy & 1:
            out |= 1 << y
    return out


def image(f, a: int) -> int:
    out = 0
    for y in bits(a):
        out |= 1 << f[y]
    return out


def continuous_maps(source: FiniteTopology, target: FiniteTopology):
    for f in product(range(target.n), repeat=source.n):
        if continuous(f, source, target):
            yield f
