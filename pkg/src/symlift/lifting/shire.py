"""Bookkeeping for glued segment lifts."""

from __future__ import annotations

from dataclasses import dataclass, field


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def groups(self) -> int:
        return len({self.find(a) for a in range(len(self.parent))})


@dataclass
class Sheet:
    segment: int
    seed_node: int
    via_event: int | None
    permutation: tuple[int, ...]


@dataclass
class ShireGraph:
    """Segments, the events joining them, the sheet chosen on each, and the glued groups."""

    n_segments: int
    adjacency: dict[int, list[int]] = field(default_factory=dict)
    sheets: dict[int, Sheet] = field(default_factory=dict)
    glue: UnionFind = None

    def __post_init__(self):
        if self.glue is None:
            self.glue = UnionFind(self.n_segments)

    def add_event(self, event_id: int, a: int, b: int):
        self.adjacency.setdefault(a, []).append(event_id)
        self.adjacency.setdefault(b, []).append(event_id)

    def assign(self, sheet: Sheet):
        if sheet.segment in self.sheets:
            raise ValueError(f"segment {sheet.segment} already carries a sheet")
        self.sheets[sheet.segment] = sheet

    @property
    def complete(self) -> bool:
        return len(self.sheets) == self.n_segments and self.glue.groups() == 1
