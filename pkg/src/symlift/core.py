"""Point domains, m-tuples and canonical forms for the quotients of X^m.

Tuples are plain Python tuples of points.  A permutation ``sigma`` is a tuple of
0-based positions and acts on a tuple ``t`` by ``t_sigma = (t[sigma[0]], ...,
t[sigma[m-1]])``.  Positions inside :class:`PieceId` blocks are 0-based too.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from numbers import Real

from .errors import AmbiguousCoincidence, GroupTooLarge


@dataclass(frozen=True)
class PointDomain:
    """Where the coordinates of a tuple live.

    ``labels`` points are hashable atoms compared exactly (metric 0/1).
    ``euclidean`` points are floats (``dim == 1``) or coordinate sequences,
    ordered lexicographically and measured with the Euclidean metric.
    """

    kind: str = "labels"
    dim: int | None = None

    def __post_init__(self):
        if self.kind not in ("labels", "euclidean"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "euclidean" and (self.dim is None or self.dim < 1):
            raise ValueError("euclidean domain needs dim >= 1")

    @property
    def exact(self) -> bool:
        return self.kind == "labels"

    def coords(self, p) -> tuple[float, ...]:
        if isinstance(p, Real):
            return (float(p),)
        return tuple(float(c) for c in p)

    def key(self, p):
        if self.kind == "labels":
            # type name first so that mixed int/str labels still have a total order
            return (type(p).__name__, p)
        return self.coords(p)

    def dist(self, p, q) -> float:
        if self.kind == "labels":
            return 0.0 if p == q else 1.0
        if isinstance(p, Real) and isinstance(q, Real):
            return abs(float(p) - float(q))
        return math.dist(self.coords(p), self.coords(q))

    def same(self, p, q) -> bool:
        return self.key(p) == self.key(q)


LABELS = PointDomain("labels")
LINE = PointDomain("euclidean", 1)
PLANE = PointDomain("euclidean", 2)


def euclidean(dim: int) -> PointDomain:
    return PointDomain("euclidean", dim)


# -- permutations -----------------------------------------------------------

def permute(t, sigma):
    return tuple(t[s] for s in sigma)


def compose(g, h):
    """Permutation with ``permute(permute(t, g), h) == permute(t, compose(g, h))``."""
    return tuple(g[i] for i in h)


def invert(sigma):
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def identity(m):
    return tuple(range(m))


# -- value types ------------------------------------------------------------

@dataclass(frozen=True)
class PieceId:
    """Coincidence pattern of an m-tuple: which positions carry the same point."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        seen = [i for b in blocks for i in b]
        if any(len(b) == 0 for b in blocks) or sorted(seen) != list(range(len(seen))):
            raise ValueError(f"blocks {self.blocks!r} do not partition 0..m-1")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels) -> PieceId:
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(tuple(g) for g in groups.values()))

    @property
    def m(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def shape(self) -> tuple[int, ...]:
        """Block sizes, descending."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    @property
    def jvector(self) -> tuple[int, tuple[int, ...]]:
        """``(j0, parts)``: singleton count and the ascending sizes of repeated blocks."""
        sizes = [len(b) for b in self.blocks]
        return sizes.count(1), tuple(sorted(s for s in sizes if s >= 2))

    @property
    def is_principal(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def labels(self) -> tuple[int, ...]:
        lab = [0] * self.m
        for k, b in enumerate(self.blocks):
            for i in b:
                lab[i] = k
        return tuple(lab)

    def relabel(self, sigma) -> PieceId:
        """Pattern of ``permute(t, sigma)`` given this is the pattern of ``t``."""
        inv = invert(sigma)
        return PieceId(tuple(tuple(inv[i] for i in b) for b in self.blocks))

    def contains(self, t, domain: PointDomain = LABELS) -> bool:
        """Exact membership of ``t`` in the piece this pattern names."""
        lab = self.labels()
        m = len(t)
        if m != self.m:
            return False
        for i in range(m):
            for j in range(i + 1, m):
                if domain.same(t[i], t[j]) != (lab[i] == lab[j]):
                    return False
        return True

    def to_json(self):
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class SPClass:
    """Canonical representative of a point of SP_m: the sorted tuple."""

    points: tuple

    @property
    def m(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class FClass:
    """Canonical representative of a point of F_m: the sorted distinct support."""

    support: tuple

    @property
    def size(self) -> int:
        return len(self.support)


# -- classification ---------------------------------------------------------

def _clusters(t, eps, domain):
    m = len(t)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if eps == 0 or domain.exact:
        for i in range(m):
            for j in range(i + 1, m):
                if domain.same(t[i], t[j]):
                    parent[find(j)] = find(i)
    else:
        for i in range(m):
            for j in range(i + 1, m):
                if domain.dist(t[i], t[j]) <= eps:
                    parent[find(j)] = find(i)
    return [find(i) for i in range(m)]


def classify(t, eps: float = 0.0, domain: PointDomain = LABELS) -> PieceId:
    """Coincidence pattern of ``t``.

    With ``eps > 0`` coincidence is single-linkage clustering at distance
    ``eps``; a cluster whose diameter exceeds ``eps`` means the tuple sits too
    close to a piece boundary for this tolerance and raises
    :class:`AmbiguousCoincidence`.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if eps > 0 and domain.exact:
        raise ValueError("eps must be 0 for an exact label domain")
    labels = _clusters(t, eps, domain)
    piece = PieceId.from_labels(labels)
    if eps > 0:
        for b in piece.blocks:
            diam = max((domain.dist(t[i], t[j]) for i in b for j in b), default=0.0)
            if diam > eps:
                gap = min(
                    (domain.dist(t[i], t[j])
                     for i in range(len(t)) for j in range(len(t))
                     if labels[i] != labels[j]),
                    default=math.inf,
                )
                raise AmbiguousCoincidence(
                    f"cluster {list(b)} has diameter {diam!r} > eps={eps!r}",
                    diameter=diam, gap=gap)
    return piece


def sp_canonical(t, domain: PointDomain = LABELS) -> SPClass:
    return SPClass(tuple(sorted(t, key=domain.key)))


def f_canonical(t, domain: PointDomain = LABELS) -> FClass:
    support = {}
    for p in t:
        support.setdefault(domain.key(p), p)
    return FClass(tuple(support[k] for k in sorted(support)))


def primitive_rep(t, eps: float = 0.0, domain: PointDomain = LABELS):
    """Return ``(t_sigma, sigma)`` with coinciding blocks contiguous at the front.

    Blocks are ordered by size descending, then by smallest value; within a
    block positions are ordered by value, then by original position.
    ``permute(t_sigma, invert(sigma)) == t``.
    """
    piece = classify(t, eps, domain)

    def block_key(b):
        return (-len(b), min(domain.key(t[i]) for i in b))

    sigma = []
    for b in sorted(piece.blocks, key=block_key):
        sigma.extend(sorted(b, key=lambda i: (domain.key(t[i]), i)))
    sigma = tuple(sigma)
    return permute(t, sigma), sigma


def theta_canonical(t, eps: float = 0.0, domain: PointDomain = LABELS):
    """Canonical member of the theta-orbit of ``t`` (its primitive arrangement)."""
    return primitive_rep(t, eps, domain)[0]


def project_piece(t, eps: float = 0.0, domain: PointDomain = LABELS):
    """One point per coincidence block, in primitive order."""
    piece = classify(t, eps, domain)
    prim, _ = primitive_rep(t, eps, domain)
    out, pos = [], 0
    for size in piece.shape:
        out.append(prim[pos])
        pos += size
    return tuple(out)


def group_closure(generators, m: int, bound: int = 40320):
    """All elements of the permutation group generated by ``generators``."""
    ident = identity(m)
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(ident):
            raise ValueError(f"{g!r} is not a permutation of 0..{m - 1}")
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for h in gens:
            gh = compose(g, h)
            if gh not in seen:
                seen.add(gh)
                if len(seen) > bound:
                    raise GroupTooLarge(f"group closure exceeds {bound} elements")
                queue.append(gh)
    return seen


def orbit_canonical(t, generators, domain: PointDomain = LABELS, bound: int = 40320):
    """Order-minimum of the orbit of ``t`` under the group generated by ``generators``."""
    group = group_closure(generators, len(t), bound)
    return min((permute(t, g) for g in group),
               key=lambda u: tuple(domain.key(p) for p in u))
