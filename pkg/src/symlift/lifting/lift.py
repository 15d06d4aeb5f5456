"""Lifting sampled regions of SP_m / F_m to grids of ordered m-tuples."""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field

from ..core import f_canonical, primitive_rep, sp_canonical, theta_canonical
from ..errors import ConflictingSheet, HolonomyError, InputMismatch
from ..regions import SampledRegion, Segmentation, segment
from .matching import cost_matrix, expand_support, match_step
from .shire import Sheet, ShireGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftOptions:
    seed_policy: str = "canonical"
    tie: str = "lex"
    predict: bool = True
    seed: tuple | None = None

    def __post_init__(self):
        if self.seed_policy != "canonical":
            raise ValueError(f"unsupported seed policy {self.seed_policy!r}")
        if self.tie != "lex":
            raise ValueError(f"unsupported tie rule {self.tie!r}")


@dataclass
class LiftResult:
    region: SampledRegion
    lift: list[tuple]
    segmentation: Segmentation
    shire: ShireGraph
    glue_events: list[int]
    diagnostics: dict = field(default_factory=dict)

    def tuple_at(self, idx) -> tuple:
        return self.lift[self.region.flat_index(idx)]


class _Lifter:
    def __init__(self, region: SampledRegion, seg: Segmentation, opts: LiftOptions):
        self.region = region
        self.seg = seg
        self.opts = opts
        self.lift: list = [None] * region.size
        self.parent: list = [None] * region.size
        self.ties: list[dict] = []
        self.multiplicities: dict[int, tuple] = {}

    def key(self, t):
        return tuple(self.region.domain.key(p) for p in t)

    def predict(self, u, v):
        """Linear extrapolation of the lift at ``v`` from ``u`` and the node behind ``u``."""
        region = self.region
        if not self.opts.predict or region.domain.exact:
            return None
        w = 2 * u - v
        if not 0 <= w < region.size or self.lift[w] is None:
            return None
        if sum(abs(a - b) for a, b in zip(region.grid_index(w), region.grid_index(u))) != 1:
            return None
        dom = region.domain
        return tuple(
            tuple(2 * a - b for a, b in zip(dom.coords(p), dom.coords(q)))
            for p, q in zip(self.lift[u], self.lift[w]))

    def step(self, prev, v, predict=None, record=False):
        region = self.region
        target = region.samples[v]
        if region.mode == "f":
            target, mult, rebalanced = expand_support(prev, target, region.eps, region.domain)
            if record:
                self.multiplicities[v] = mult
        out, plan = match_step(prev, target, region.eps, region.domain, predict)
        if record and plan.tie_rule is not None:
            self.ties.append({"node": v, "rule": plan.tie_rule, "optimal": plan.n_optimal})
        return out

    def lift_segment(self, sid: int, seed_node: int, seed):
        region, seg = self.region, self.seg
        members = set(seg.segments[sid].nodes)
        self.lift[seed_node] = tuple(seed)
        queue = deque([seed_node])
        while queue:
            u = queue.popleft()
            for w in region.neighbors(u):
                if w in members and self.lift[w] is None:
                    self.lift[w] = self.step(self.lift[u], w, self.predict(u, w), record=True)
                    self.parent[w] = u
                    queue.append(w)
        self.check_segment(members)

    def check_segment(self, members):
        region = self.region
        for sq in region.squares():
            if not all(v in members for v in sq):
                continue
            v00, v10, v01, v11 = sq
            a = self.step(self.step(self.lift[v00], v10), v11)
            b = self.step(self.step(self.lift[v00], v01), v11)
            if self.key(a) != self.key(b):
                raise HolonomyError(
                    f"lifts around square {sq} disagree; refine the grid",
                    square=sq, tuples=(a, b))
        for u, v, _ in region.edges():
            if u not in members or v not in members:
                continue
            if self.parent[v] == u or self.parent[u] == v:
                continue
            got = self.step(self.lift[u], v, self.predict(u, v))
            if self.key(got) != self.key(self.lift[v]):
                raise HolonomyError(
                    f"edge {(u, v)} closes a loop with nontrivial monodromy",
                    edge=(u, v), tuples=(self.lift[v], got))


def _distinct(label):
    return label if isinstance(label, int) else len(label)


def seed_tuple(region: SampledRegion, node: int):
    """Canonical starting tuple for a region node."""
    if region.mode == "sp":
        return theta_canonical(region.samples[node].points, region.eps, region.domain)
    support = region.samples[node].support
    k, m = len(support), region.m
    base, extra = divmod(m, k)
    pts = tuple(p for j, p in enumerate(support) for _ in range(base + (j < extra)))
    return theta_canonical(pts, region.eps, region.domain)


def lift_region(region: SampledRegion, opts: LiftOptions | None = None) -> LiftResult:
    """Lift every node of ``region`` to an ordered tuple, gluing segments across events."""
    opts = opts or LiftOptions()
    seg = segment(region)
    lifter = _Lifter(region, seg, opts)
    shire = ShireGraph(len(seg.segments))
    for ev in seg.events:
        shire.add_event(ev.id, seg.node_segment[ev.edge[0]], seg.node_segment[ev.edge[1]])

    def sheet_of(sid, node, via):
        _, sigma = primitive_rep(lifter.lift[node], region.eps, region.domain)
        shire.assign(Sheet(sid, node, via, sigma))

    first = seg.node_segment[0]
    seed = seed_tuple(region, 0) if opts.seed is None else tuple(opts.seed)
    if region.mode == "f":
        lifter.multiplicities[0] = tuple(
            sum(region.domain.same(p, s) for p in seed) for s in region.samples[0].support)
    if not verify_node(region, 0, seed):
        raise InputMismatch(f"seed {seed!r} does not project to the sample at node 0")
    lifter.lift_segment(first, 0, seed)
    sheet_of(first, 0, None)

    glue_events: list[int] = []
    queue = deque([first])
    while queue:
        sid = queue.popleft()
        for eid in seg.segments[sid].boundary_events:
            ev = seg.events[eid]
            u, v = ev.edge
            if seg.node_segment[u] != sid:
                u, v = v, u
            other = seg.node_segment[v]
            if other in shire.sheets:
                continue
            seed = lifter.step(lifter.lift[u], v, lifter.predict(u, v), record=True)
            lifter.parent[v] = u
            lifter.lift_segment(other, v, seed)
            sheet_of(other, v, eid)
            shire.glue.union(sid, other)
            glue_events.append(eid)
            queue.append(other)

    used = set(glue_events)
    for ev in seg.events:
        if ev.id in used:
            continue
        u, v = ev.edge
        cu, cv = _distinct(ev.from_label), _distinct(ev.to_label)
        directions = [(u, v)] if cu > cv else [(v, u)] if cv > cu else [(u, v), (v, u)]
        for a, b in directions:
            got = lifter.step(lifter.lift[a], b, lifter.predict(a, b))
            if lifter.key(got) != lifter.key(lifter.lift[b]):
                raise ConflictingSheet(
                    f"event {ev.id} on edge {ev.edge}: segments carry incompatible sheets",
                    event=ev.id, expected=lifter.lift[b], found=got)
        shire.glue.union(seg.node_segment[u], seg.node_segment[v])

    result = LiftResult(region, lifter.lift, seg, shire, glue_events)
    report = verify(region, lifter.lift)
    result.diagnostics = {
        "segments": len(seg.segments),
        "events": len(seg.events),
        "passing_nodes": sorted(seg.passing_nodes),
        "complete_shire": shire.complete,
        "max_step_displacement": report.values["max_step_cost"],
        "max_position_step": report.values["lift_step"],
        "round_trip_residual": report.values["round_trip_residual"],
        "tie_breaks": lifter.ties,
    }
    if region.mode == "f":
        result.diagnostics["multiplicities"] = {
            str(k): list(v) for k, v in sorted(lifter.multiplicities.items())}
    log.debug("lifted %d nodes over %d segments", region.size, len(seg.segments))
    return result


# -- verification ---------------------------------------------------------------

@dataclass
class VerifyReport:
    checks: list[dict]
    values: dict

    @property
    def ok(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.checks)


def _hausdorff(a, b, domain) -> float:
    d = cost_matrix(a, b, domain)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def verify_node(region: SampledRegion, node: int, t) -> bool:
    """Exact round trip of one lifted tuple against its sample."""
    dom = region.domain
    if len(t) != region.m:
        return False
    if region.mode == "sp":
        return [dom.key(p) for p in sp_canonical(t, dom).points] == \
               [dom.key(p) for p in region.samples[node].points]
    return [dom.key(p) for p in f_canonical(t, dom).support] == \
           [dom.key(p) for p in region.samples[node].support]


def verify(region: SampledRegion, lift) -> VerifyReport:
    """Recompute round-trip and continuity checks of a lift against its region."""
    dom = region.domain
    checks, values = [], {}
    if len(lift) != region.size or any(t is None or len(t) != region.m for t in lift):
        checks.append({"name": "shape", "verdict": "fail",
                       "detail": f"expected {region.size} tuples of length {region.m}"})
        values.update(round_trip_residual=None, lift_step=None, max_step_cost=None)
        return VerifyReport(checks, values)
    checks.append({"name": "shape", "verdict": "pass", "detail": ""})

    bad = [node for node, t in enumerate(lift) if not verify_node(region, node, t)]
    values["round_trip_residual"] = len(bad)
    checks.append({"name": "round_trip", "verdict": "fail" if bad else "pass",
                   "detail": f"nodes {bad[:10]}" if bad else ""})

    lift_step, input_step, max_cost, worst = 0.0, 0.0, 0.0, None
    for u, v, _ in region.edges():
        d = [dom.dist(p, q) for p, q in zip(lift[u], lift[v])]
        if max(d) > lift_step:
            lift_step, worst = max(d), (u, v)
        max_cost = max(max_cost, math.fsum(d))
        input_step = max(input_step, _hausdorff(region.points(u), region.points(v), dom))
    bound = input_step + 2 * region.eps
    values.update(lift_step=lift_step, input_step=input_step, max_step_cost=max_cost)
    ok = lift_step <= bound + 1e-12 * (1.0 + bound)
    checks.append({"name": "continuity", "verdict": "pass" if ok else "fail",
                   "detail": f"lift step {lift_step!r} vs input step {input_step!r} + 2*eps"
                             + ("" if ok else f"; worst edge {worst}")})
    return VerifyReport(checks, values)
