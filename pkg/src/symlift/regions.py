"""Sampled n-regions over SP_m / F_m, their piece segmentation and passing events.

A region is a C-ordered grid of samples.  Nodes are addressed by their flat
index; two nodes are adjacent when their grid indices differ by one along a
single axis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import prod

from .core import LABELS, FClass, PieceId, PointDomain, SPClass, classify
from .errors import AmbiguousCoincidence, ClassificationAmbiguity, InputMismatch


@dataclass
class SampledRegion:
    mode: str
    m: int
    shape: tuple[int, ...]
    samples: list
    eps: float = 0.0
    domain: PointDomain = LABELS
    coords: list | None = None

    def __post_init__(self):
        self.shape = tuple(int(s) for s in self.shape)
        if self.mode not in ("sp", "f"):
            raise InputMismatch(f"mode must be 'sp' or 'f', got {self.mode!r}")
        if not self.shape or any(s < 1 for s in self.shape):
            raise InputMismatch(f"bad grid shape {self.shape}")
        if prod(self.shape) != len(self.samples):
            raise InputMismatch(f"shape {self.shape} needs {prod(self.shape)} samples, "
                                f"got {len(self.samples)}")
        if self.eps < 0 or (self.eps > 0 and self.domain.exact):
            raise InputMismatch("eps must be >= 0, and 0 for label domains")
        if self.coords is None:
            self.coords = [[k / (s - 1) if s > 1 else 0.0 for k in range(s)] for s in self.shape]
        for node, s in enumerate(self.samples):
            self._check_sample(node, s)
        self._strides = [prod(self.shape[a + 1:]) for a in range(self.n)]

    def _check_sample(self, node, s):
        key = self.domain.key
        if self.mode == "sp":
            if not isinstance(s, SPClass) or len(s.points) != self.m:
                raise InputMismatch(f"node {node}: expected an SPClass with {self.m} points")
            ks = [key(p) for p in s.points]
            if ks != sorted(ks):
                raise InputMismatch(f"node {node}: sample points are not in canonical order")
        else:
            if not isinstance(s, FClass) or not 1 <= len(s.support) <= self.m:
                raise InputMismatch(f"node {node}: expected an FClass with 1..{self.m} points")
            ks = [key(p) for p in s.support]
            if any(a >= b for a, b in zip(ks, ks[1:])):
                raise InputMismatch(f"node {node}: support is not strictly increasing")

    @property
    def n(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return len(self.samples)

    def grid_index(self, node: int) -> tuple[int, ...]:
        out = []
        for st in self._strides:
            q, node = divmod(node, st)
            out.append(q)
        return tuple(out)

    def flat_index(self, idx) -> int:
        return sum(i * st for i, st in zip(idx, self._strides))

    def neighbor(self, node: int, axis: int, step: int) -> int | None:
        i = self.grid_index(node)[axis] + step
        if 0 <= i < self.shape[axis]:
            return node + step * self._strides[axis]
        return None

    def neighbors(self, node: int):
        for axis in range(self.n):
            for step in (-1, 1):
                nb = self.neighbor(node, axis, step)
                if nb is not None:
                    yield nb

    def edges(self):
        """Axis-adjacent node pairs ``(u, v, axis)`` with ``v = u + stride``."""
        for u in range(self.size):
            for axis in range(self.n):
                v = self.neighbor(u, axis, 1)
                if v is not None:
                    yield u, v, axis

    def squares(self):
        """Unit grid squares ``(v00, v10, v01, v11)`` over every pair of axes."""
        for u in range(self.size):
            for a in range(self.n):
                for b in range(a + 1, self.n):
                    ua = self.neighbor(u, a, 1)
                    ub = self.neighbor(u, b, 1)
                    if ua is None or ub is None:
                        continue
                    yield u, ua, ub, self.neighbor(ua, b, 1)

    def points(self, node: int) -> tuple:
        s = self.samples[node]
        return s.points if self.mode == "sp" else s.support

    def transposed(self, axes=None) -> SampledRegion:
        """The same region with grid axes permuted (reversed by default)."""
        axes = tuple(reversed(range(self.n))) if axes is None else tuple(axes)
        new_shape = tuple(self.shape[a] for a in axes)
        out = [None] * self.size
        for node in range(self.size):
            idx = self.grid_index(node)
            new_idx = tuple(idx[a] for a in axes)
            out[sum(i * prod(new_shape[k + 1:]) for k, i in enumerate(new_idx))] = self.samples[node]
        return SampledRegion(self.mode, self.m, new_shape, out, self.eps, self.domain,
                             [self.coords[a] for a in axes])


@dataclass
class Segment:
    id: int
    label: object
    piece: PieceId | None
    nodes: tuple[int, ...]
    boundary_events: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class PassingEvent:
    id: int
    edge: tuple[int, int]
    axis: int
    from_label: object
    to_label: object
    passing_nodes: tuple[int, ...]


@dataclass
class Segmentation:
    labels: list
    pieces: list
    segments: list[Segment]
    events: list[PassingEvent]
    node_segment: list[int]

    def segment_of(self, node: int) -> Segment:
        return self.segments[self.node_segment[node]]

    @property
    def passing_nodes(self) -> set[int]:
        return {v for e in self.events for v in e.passing_nodes}


def node_piece(region: SampledRegion, node: int) -> PieceId:
    try:
        return classify(region.points(node), region.eps, region.domain)
    except AmbiguousCoincidence as exc:
        raise ClassificationAmbiguity(node, exc) from exc


def node_label(region: SampledRegion, node: int, piece: PieceId | None = None):
    """Piece type of a node: block sizes (sp mode) or support cardinality (f mode)."""
    if region.mode == "f":
        return len(region.samples[node].support)
    return (piece or node_piece(region, node)).shape


def _distinct_count(label):
    return label if isinstance(label, int) else len(label)


def segment(region: SampledRegion) -> Segmentation:
    """Split the grid into connected runs of constant piece type and list type changes."""
    if region.mode == "sp":
        pieces = [node_piece(region, v) for v in range(region.size)]
        labels = [p.shape for p in pieces]
    else:
        pieces = [None] * region.size
        labels = [node_label(region, v) for v in range(region.size)]

    node_segment = [-1] * region.size
    segments: list[Segment] = []
    for start in range(region.size):
        if node_segment[start] >= 0:
            continue
        sid = len(segments)
        node_segment[start] = sid
        members, queue = [], deque([start])
        while queue:
            u = queue.popleft()
            members.append(u)
            for w in region.neighbors(u):
                if node_segment[w] < 0 and labels[w] == labels[start]:
                    node_segment[w] = sid
                    queue.append(w)
        segments.append(Segment(sid, labels[start], pieces[start], tuple(sorted(members))))

    events: list[PassingEvent] = []
    for u, v, axis in region.edges():
        if labels[u] == labels[v]:
            continue
        cu, cv = _distinct_count(labels[u]), _distinct_count(labels[v])
        if cu < cv:
            passing = (u,)
        elif cv < cu:
            passing = (v,)
        else:
            passing = (u, v)
        ev = PassingEvent(len(events), (u, v), axis, labels[u], labels[v], passing)
        events.append(ev)
        segments[node_segment[u]].boundary_events.append(ev.id)
        segments[node_segment[v]].boundary_events.append(ev.id)
    return Segmentation(labels, pieces, segments, events, node_segment)


def check_empty_interior(region: SampledRegion, seg: Segmentation) -> dict:
    """No node has itself and all its grid neighbors among the passing nodes."""
    passing = seg.passing_nodes
    for v in sorted(passing):
        ball = [v, *region.neighbors(v)]
        if all(w in passing for w in ball):
            return {"holds": False, "passing_nodes": sorted(passing), "ball": sorted(ball)}
    return {"holds": True, "passing_nodes": sorted(passing), "ball": None}


def check_single_piece(region: SampledRegion, seg: Segmentation) -> dict:
    """Without events the whole grid must carry one piece type; reports the types seen.

    ``holds`` is False only when there are no events yet several types occur,
    which would contradict the segmentation.
    """
    labels = sorted(set(seg.labels), key=repr)
    single = len(labels) == 1
    return {"single": single, "labels": labels, "events": len(seg.events),
            "holds": bool(seg.events) or single}
