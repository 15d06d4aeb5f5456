"""Reproducible sampled regions used by the tests, the scripts and the CLI examples."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .core import LABELS, LINE, PLANE, f_canonical, sp_canonical
from .regions import SampledRegion


def _sp(points, domain):
    return sp_canonical(tuple(points), domain)


def _pair(theta, center=(0.0, 0.0), radius=1.0):
    c, s = math.cos(theta), math.sin(theta)
    return ((center[0] + radius * c, center[1] + radius * s),
            (center[0] - radius * c, center[1] - radius * s))


def crossing(n_nodes: int = 21) -> SampledRegion:
    """``{t, -t}`` for ``t`` uniform on ``[-1, 1]``; the pair collides at ``t = 0``."""
    ts = [float(t) for t in np.linspace(-1.0, 1.0, n_nodes)]
    return SampledRegion("sp", 2, (n_nodes,), [_sp((t, -t), LINE) for t in ts], 0.0, LINE,
                         coords=[ts])


def constant(shape=(5,), points=(0.0, 1.0, 2.5)) -> SampledRegion:
    size = math.prod(shape)
    sample = _sp(points, LINE)
    return SampledRegion("sp", len(points), tuple(shape), [sample] * size, 0.0, LINE)


def constant_labels(shape=(4,), points=("a", "b", "b")) -> SampledRegion:
    size = math.prod(shape)
    return SampledRegion("sp", len(points), tuple(shape),
                         [_sp(points, LABELS)] * size, 0.0, LABELS)


def antipodal(n_nodes: int = 64) -> SampledRegion:
    """``{e^{i theta}, -e^{i theta}}`` for ``theta`` from 0 to pi in the plane."""
    thetas = [float(t) for t in np.linspace(0.0, math.pi, n_nodes)]
    return SampledRegion("sp", 2, (n_nodes,), [_sp(_pair(t), PLANE) for t in thetas],
                         0.0, PLANE, coords=[thetas])


def support_jump(n_nodes: int = 11, top: float = 0.5) -> SampledRegion:
    """f-mode path with support ``{0}`` at the start splitting into ``{-t, t}``."""
    ts = [float(t) for t in np.linspace(0.0, top, n_nodes)]
    samples = [f_canonical((-t, t), LINE) for t in ts]
    return SampledRegion("f", 2, (n_nodes,), samples, 0.0, LINE, coords=[ts])


def rotating_grid(size: int = 50, turn: float = 1.0) -> SampledRegion:
    """2-d grid of a unit pair rotated by ``turn * (x + y) / 2`` radians, centre drifting."""
    xs = [float(v) for v in np.linspace(0.0, 1.0, size)]
    samples = []
    for x in xs:
        for y in xs:
            samples.append(_sp(_pair(turn * (x + y) / 2, center=(0.3 * x, -0.2 * y)), PLANE))
    return SampledRegion("sp", 2, (size, size), samples, 0.0, PLANE, coords=[xs, xs])


def rotating_patch() -> SampledRegion:
    """2x2 principal patch whose pair turns by 0.01 rad per step."""
    return rotating_grid(2, turn=0.02)


def braid(turns=(0.0, 0.4, 0.0, 0.8)) -> SampledRegion:
    """Under-sampled 2x2 patch: along one side the pair turns too far in a single step.

    ``turns`` are the pair angles (in units of pi) at nodes 00, 01, 10, 11.
    The two edge paths around the square arrive at opposite arrangements.
    """
    samples = [_sp(_pair(math.pi * a), PLANE) for a in turns]
    return SampledRegion("sp", 2, (2, 2), samples, 0.0, PLANE)


def square_root(size: int = 9) -> SampledRegion:
    """Both square roots of ``z`` over a grid on ``[-1, 1]^2`` centred on the collision ``z = 0``.

    Going once around the centre swaps the roots, so no consistent lift exists.
    """
    xs = [float(v) for v in np.linspace(-1.0, 1.0, size)]
    samples = []
    for x in xs:
        for y in xs:
            w = cmath.sqrt(complex(x, y))
            samples.append(_sp(((w.real, w.imag), (-w.real, -w.imag)), PLANE))
    return SampledRegion("sp", 2, (size, size), samples, 0.0, PLANE, coords=[xs, xs])


def diagonal_run(run: int = 3, flank: int = 2) -> SampledRegion:
    """Principal samples, a run of diagonal samples, principal samples again (m = 2)."""
    pts = [(-1.0, 1.0)] * flank + [(0.0, 0.0)] * run + [(-1.0, 1.0)] * flank
    return SampledRegion("sp", 2, (len(pts),), [_sp(p, LINE) for p in pts], 0.0, LINE)


def collapsing_triple() -> SampledRegion:
    """m = 3 path: principal, pair, triple, pair, principal; every edge changes type."""
    pts = [(-1.0, 0.0, 1.0), (0.0, 0.0, 1.0), (0.0, 0.0, 0.0), (0.0, 0.0, 1.0), (-1.0, 0.0, 1.0)]
    return SampledRegion("sp", 3, (5,), [_sp(p, LINE) for p in pts], 0.0, LINE)


def separated_points(rng: np.random.Generator, m: int, gap: float, box: float):
    while True:
        pts = rng.uniform(0.0, box, size=(m, 2))
        d = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1)) + np.eye(m) * 1e9
        if d.min() >= gap:
            return pts


def planar_path(seed: int, m: int | None = None, n_nodes: int = 1000):
    """Random smooth planar m-point path with well separated points.

    Each point circles its own base point with radius 0.2; bases are at least
    1 apart, so points stay at least 0.6 apart while one step moves a point by
    less than 0.01.  Returns the region and the true ordered trajectory.
    """
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 6)) if m is None else m
    base = separated_points(rng, m, 1.0, 2.0 + m)
    omega = rng.uniform(-3.0, 3.0, size=m) * 2 * math.pi
    phase = rng.uniform(0.0, 2 * math.pi, size=m)
    s = np.linspace(0.0, 1.0, n_nodes)
    ang = omega[None, :] * s[:, None] + phase[None, :]
    xs = base[None, :, 0] + 0.2 * np.cos(ang)
    ys = base[None, :, 1] + 0.2 * np.sin(ang)
    truth = [tuple((float(xs[k, i]), float(ys[k, i])) for i in range(m)) for k in range(n_nodes)]
    region = SampledRegion("sp", m, (n_nodes,), [_sp(t, PLANE) for t in truth], 0.0, PLANE,
                           coords=[[float(v) for v in s]])
    return region, truth


def jittered_constant(rng: np.random.Generator, eps: float, shape=(6, 6)):
    """Piece-constant region: one base tuple with per-node jitter below ``eps / 4``."""
    m = int(rng.integers(2, 5))
    pattern = [int(rng.integers(0, m)) for _ in range(m)]
    values = sorted(set(pattern))
    base = {v: 10 * eps * k + eps * float(rng.random()) for k, v in enumerate(values)}
    samples = []
    for _ in range(math.prod(shape)):
        jitter = rng.uniform(-eps / 8, eps / 8, size=m)
        samples.append(_sp([base[pattern[i]] + jitter[i] for i in range(m)], LINE))
    return SampledRegion("sp", m, tuple(shape), samples, eps, LINE)


ALL = {
    "crossing": crossing,
    "constant": constant,
    "antipodal": antipodal,
    "support-jump": support_jump,
    "rotating-grid": rotating_grid,
    "rotating-patch": rotating_patch,
    "braid": braid,
    "square-root": square_root,
    "diagonal-run": diagonal_run,
    "collapsing-triple": collapsing_triple,
}
