"""Single lifting steps: minimum-displacement matching and support expansion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..core import LABELS, FClass, PointDomain, SPClass

MAX_TIE_ENUMERATION = 5040


@dataclass(frozen=True)
class MatchPlan:
    """``permutation[i]`` is the index of the next sample point given to position ``i``."""

    permutation: tuple[int, ...]
    cost: float
    n_optimal: int = 1
    tie_rule: str | None = None


def cost_matrix(prev, points, domain: PointDomain) -> np.ndarray:
    if domain.exact:
        return np.array([[domain.dist(p, q) for q in points] for p in prev], dtype=float)
    a = np.array([domain.coords(p) for p in prev], dtype=float)
    b = np.array([domain.coords(q) for q in points], dtype=float)
    return np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2))


def _tol(best, m):
    return 1e-12 * m * (1.0 + abs(best))


def _min_cost(c: np.ndarray) -> float:
    if c.size == 0:
        return 0.0
    r, k = linear_sum_assignment(c)
    return float(c[r, k].sum())


def _is_unique(c, cols, best):
    m = len(cols)
    chosen = c[np.arange(m), cols]
    others = c.copy()
    others[np.arange(m), cols] = np.inf
    if np.all(chosen < others.min(axis=1)):
        # every row strictly prefers its own column: any other assignment costs more
        return True
    big = float(c.max()) * (m + 1) + 1.0
    tol = _tol(best, m)
    for i in range(m):
        c2 = c.copy()
        c2[i, cols[i]] = big
        if _min_cost(c2) <= best + tol:
            return False
    return True


def optimal_assignments(c: np.ndarray, limit: int = MAX_TIE_ENUMERATION):
    """Minimum total cost and all optimal assignments in lexicographic order.

    Returns ``(best, perms)``; ``perms`` is truncated to ``limit`` entries.
    The first entry is always the lexicographically smallest optimum.
    """
    m = c.shape[0]
    rows, cols = linear_sum_assignment(c)
    best = float(c[rows, cols].sum())
    if m <= 1 or _is_unique(c, cols, best):
        return best, [tuple(int(j) for j in cols)]

    tol = _tol(best, m)
    out: list[tuple[int, ...]] = []

    def rec(i, free, spent, perm):
        if len(out) >= limit:
            return
        if i == m:
            out.append(tuple(perm))
            return
        for j in free:
            rest = [k for k in free if k != j]
            spent_j = spent + c[i, j]
            if spent_j + _min_cost(c[np.ix_(range(i + 1, m), rest)]) <= best + tol:
                perm.append(j)
                rec(i + 1, rest, spent_j, perm)
                perm.pop()

    rec(0, list(range(m)), 0.0, [])
    return best, out


def match_step(prev, nxt, eps: float = 0.0, domain: PointDomain = LABELS, predict=None):
    """Arrange the multiset ``nxt`` to minimise total displacement from ``prev``.

    Among optimal arrangements that differ as tuples, the one closest to the
    tuple ``predict`` (if given) wins; remaining ties go to the
    lexicographically smallest permutation.  ``eps`` is accepted for interface
    symmetry; matching itself is exact.
    """
    points = nxt.points if isinstance(nxt, SPClass) else tuple(nxt)
    if len(points) != len(prev):
        raise ValueError(f"cannot match {len(points)} points to a {len(prev)}-tuple")
    c = cost_matrix(prev, points, domain)
    best, perms = optimal_assignments(c)

    seen, distinct = set(), []
    for perm in perms:
        key = tuple(domain.key(points[j]) for j in perm)
        if key not in seen:
            seen.add(key)
            distinct.append(perm)

    rule = None
    chosen = distinct[0]
    if len(distinct) > 1:
        rule = "lex"
        if predict is not None:
            scores = [sum(domain.dist(predict[i], points[j]) for i, j in enumerate(perm))
                      for perm in distinct]
            low = min(scores)
            close = [p for p, s in zip(distinct, scores) if s <= low + _tol(low, len(prev))]
            if len(close) < len(distinct):
                rule = "predict"
            chosen = close[0]
    plan = MatchPlan(chosen, best, len(distinct), rule)
    return tuple(points[j] for j in chosen), plan


def _nearest(p, support, domain):
    dists = [domain.dist(p, s) for s in support]
    return min(range(len(support)), key=lambda j: (dists[j], j))


def expand_support(prev, nxt, eps: float = 0.0, domain: PointDomain = LABELS):
    """Choose multiplicities for the support ``nxt`` by continuation from ``prev``.

    Each coordinate of ``prev`` votes for its nearest support point.  If some
    support point gets no vote, the votes are rebalanced at minimum added cost
    so that every support point is used at least once.

    Returns ``(SPClass, multiplicities, rebalanced)``.
    """
    support = nxt.support if isinstance(nxt, FClass) else tuple(nxt)
    m, k = len(prev), len(support)
    if not 1 <= k <= m:
        raise ValueError(f"support of size {k} cannot be spread over {m} coordinates")
    votes = [_nearest(p, support, domain) for p in prev]
    rebalanced = False
    if len(set(votes)) < k:
        rebalanced = True
        d = cost_matrix(prev, support, domain)
        nearest_cost = d.min(axis=1)
        # k mandatory columns (one per support point) plus m - k free columns
        c = np.hstack([d, np.repeat(nearest_cost[:, None], m - k, axis=1)])
        _, perms = optimal_assignments(c, limit=1)
        votes = [j if j < k else _nearest(prev[i], support, domain)
                 for i, j in enumerate(perms[0])]
    mult = tuple(votes.count(j) for j in range(k))
    points = tuple(s for s, n in zip(support, mult) for _ in range(n))
    return SPClass(points), mult, rebalanced
