"""Integer partitions, j-vectors, the part-count relation and puzzle-piece enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod

from .core import PieceId

MAX_M = 30


@dataclass(frozen=True)
class Partition:
    """Partition ``[1^a1 2^a2 ... m^am]`` stored as ``alpha = (a1, ..., am)``."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        if any(a < 0 for a in self.alpha):
            raise ValueError("multiplicities must be nonnegative")
        if sum((i + 1) * a for i, a in enumerate(self.alpha)) != len(self.alpha):
            raise ValueError(f"{self.alpha!r} is not a partition of {len(self.alpha)}")

    @property
    def m(self) -> int:
        return len(self.alpha)

    @property
    def n_parts(self) -> int:
        return sum(self.alpha)

    @property
    def parts(self) -> tuple[int, ...]:
        """Part sizes, descending."""
        return tuple(s for s in range(self.m, 0, -1) for _ in range(self.alpha[s - 1]))

    @classmethod
    def from_parts(cls, parts) -> Partition:
        m = sum(parts)
        alpha = [0] * m
        for p in parts:
            alpha[p - 1] += 1
        return cls(tuple(alpha))

    def __str__(self):
        terms = []
        for i, a in enumerate(self.alpha, start=1):
            if a:
                terms.append(f"{i}^{a}" if a > 1 else f"{i}")
        return "[" + " ".join(terms) + "]"


@dataclass(frozen=True)
class JVector:
    j0: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if self.j0 < 0:
            raise ValueError("j0 must be nonnegative")
        if any(p < 2 for p in self.parts) or list(self.parts) != sorted(self.parts):
            raise ValueError("parts must be non-decreasing integers >= 2")

    @property
    def m(self) -> int:
        return self.j0 + sum(self.parts)


@dataclass(frozen=True)
class PartitionClassTable:
    m: int
    classes: tuple[tuple[Partition, ...], ...]

    @property
    def M(self) -> int:
        return len(self.classes)

    @property
    def m_alpha(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def class_of(self, tau: Partition) -> int:
        for k, cls in enumerate(self.classes):
            if tau in cls:
                return k
        raise KeyError(tau)


def _check_m(m, upper=MAX_M):
    if not isinstance(m, int) or isinstance(m, bool) or not 1 <= m <= upper:
        raise ValueError(f"m must be an integer in 1..{upper}, got {m!r}")


def _parts_desc(m, largest):
    if m == 0:
        yield ()
        return
    for p in range(min(m, largest), 0, -1):
        for rest in _parts_desc(m - p, p):
            yield (p,) + rest


def enumerate_partitions(m: int) -> list[Partition]:
    """All partitions of ``m``, ordered by descending lexicographic alpha (``[1^m]`` first)."""
    _check_m(m)
    parts = [Partition.from_parts(p) for p in _parts_desc(m, m)]
    return sorted(parts, key=lambda t: t.alpha, reverse=True)


def jvector_of(tau: Partition) -> JVector:
    return JVector(tau.alpha[0], tuple(sorted(s for s in tau.parts if s >= 2)))


def partition_of(j: JVector) -> Partition:
    return Partition.from_parts(list(j.parts) + [1] * j.j0)


def sim_classes(m: int) -> PartitionClassTable:
    """Group partitions of ``m`` by their number of parts, most parts first."""
    groups: dict[int, list[Partition]] = {}
    for tau in enumerate_partitions(m):
        groups.setdefault(tau.n_parts, []).append(tau)
    return PartitionClassTable(m, tuple(tuple(groups[k]) for k in sorted(groups, reverse=True)))


def sim_related(a: Partition, b: Partition) -> bool:
    return a.m == b.m and a.n_parts == b.n_parts


def choice_vectors(m: int):
    """Every way of picking one partition from each class (the family indexing the psi maps)."""
    table = sim_classes(m)
    out = [()]
    for cls in table.classes:
        out = [prev + (tau,) for prev in out for tau in cls]
    return out


def set_partitions(m: int):
    """All set partitions of ``range(m)`` via restricted growth strings, in lexicographic order."""
    if m == 0:
        yield PieceId(())
        return
    rgs = [0] * m

    def rec(i, top):
        if i == m:
            yield PieceId.from_labels(rgs)
            return
        for v in range(top + 2):
            rgs[i] = v
            yield from rec(i + 1, max(top, v))

    rgs[0] = 0
    yield from rec(1, 0)


def enumerate_pieces(m: int, scope="big", taus=None) -> list[PieceId]:
    """Coincidence patterns of the big puzzle, or of the small puzzle selected by ``taus``."""
    _check_m(m, 10)
    patterns = list(set_partitions(m))
    if scope == "big":
        return patterns
    if scope != "small":
        raise ValueError(f"unknown scope {scope!r}")
    if not taus:
        raise ValueError("small scope needs at least one partition")
    shapes = {tuple(tau.parts) for tau in taus}
    if any(tau.m != m for tau in taus):
        raise ValueError("selected partitions must partition m")
    return [p for p in patterns if p.shape in shapes]


def set_partition_count(tau: Partition) -> int:
    """Number of set partitions of ``range(m)`` with block sizes ``tau``."""
    denom = prod(factorial(i) ** a * factorial(a) for i, a in enumerate(tau.alpha, start=1))
    return factorial(tau.m) // denom


def count_piece_points(q: int, piece: PieceId) -> int:
    """Points of ``X^m`` with ``|X| = q`` that lie in the given piece."""
    if q < 1:
        raise ValueError("q must be >= 1")
    r = piece.n_blocks
    return prod(range(q - r + 1, q + 1)) if r <= q else 0
