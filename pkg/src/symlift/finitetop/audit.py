"""Exhaustive auditing of boundary and passing-through statements on finite spaces.

Every registered statement is swept over all topologies on up to ``n_max``
points (and, for map statements, all continuous maps between them).  The
auditor computes verdicts; it never assumes them.  Each statement carries the
smallest ground-set size at which it is expected to fail (``None`` when it is
expected to hold everywhere), so expectations are exact for every ``n_max``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .spaces import (FiniteTopology, bits, continuous, continuous_maps,
                     enumerate_topologies, image, mask_of, preimage)


@dataclass(frozen=True)
class Ops:
    interior: tuple[int, ...]
    closure: tuple[int, ...]
    boundary: tuple[int, ...]
    bi: tuple[int, ...]
    be: tuple[int, ...]


@lru_cache(maxsize=None)
def ops(t: FiniteTopology) -> Ops:
    masks = range(1 << t.n)
    return Ops(
        tuple(t.interior(a) for a in masks),
        tuple(t.closure(a) for a in masks),
        tuple(t.boundary(a) for a in masks),
        tuple(t.boundary_interior(a) for a in masks),
        tuple(t.boundary_exterior(a) for a in masks),
    )


def _sets(*pairs):
    return {k: bits(v) if isinstance(v, int) else v for k, v in pairs}


# -- statements on one space --------------------------------------------------

def _exterior_eq_closure_boundary(t, a):
    o = ops(t)
    lhs, rhs = o.boundary[o.closure[a]], o.be[a]
    if lhs != rhs:
        return _sets(("A", a), ("boundary_of_closure", lhs), ("exterior_boundary", rhs))


def _interior_closure_split(t, a):
    o = ops(t)
    lhs, rhs = o.interior[o.closure[a]], o.interior[a] | o.bi[a]
    if lhs != rhs:
        return _sets(("A", a), ("interior_of_closure", lhs),
                     ("interior_union_interior_boundary", rhs))


def _boundary_split(t, a):
    o = ops(t)
    if o.bi[a] & o.be[a] or o.bi[a] | o.be[a] != o.boundary[a]:
        return _sets(("A", a), ("boundary", o.boundary[a]),
                     ("interior_boundary", o.bi[a]), ("exterior_boundary", o.be[a]))


def _dense_complement(t, b):
    o = ops(t)
    if o.interior[b]:
        return None
    lhs = o.interior[o.closure[t.full & ~b]]
    if lhs != t.full:
        return _sets(("B", b), ("interior_of_closure_of_complement", lhs))


def _interior_boundary_meet(t, a, b):
    o = ops(t)
    lhs, rhs = o.bi[a & b], o.bi[a] & o.bi[b]
    if lhs != rhs:
        return _sets(("A", a), ("B", b), ("lhs", lhs), ("rhs", rhs))


def _exterior_boundary_meet(t, a, b):
    o = ops(t)
    lhs, rhs = o.be[a & b], o.be[a] & o.be[b]
    if lhs != rhs:
        return _sets(("A", a), ("B", b), ("lhs", lhs), ("rhs", rhs))


def _interior_closure_meet(t, a, b):
    o = ops(t)
    lhs = o.interior[o.closure[a & b]]
    rhs = o.interior[o.closure[a]] & o.interior[o.closure[b]]
    if lhs != rhs:
        return _sets(("A", a), ("B", b), ("lhs", lhs), ("rhs", rhs))


def _boundary_pair_union(t, a, b):
    if a & b:
        return None
    o = ops(t)
    inner = o.interior[o.boundary[a] | o.boundary[b]]
    if inner:
        return _sets(("A", a), ("B", b), ("interior", inner))


def _closed_thin_pair_union(t, a, b):
    o = ops(t)
    if a & b or not (t.is_closed(a) and t.is_closed(b)) or o.interior[a] or o.interior[b]:
        return None
    inner = o.interior[a | b]
    if inner:
        return _sets(("A", a), ("B", b), ("interior", inner))


def _boundary_family_union(t, family):
    o = ops(t)
    union = 0
    for a in family:
        union |= o.boundary[a]
    inner = o.interior[union]
    if inner:
        return {"family": [bits(a) for a in family], "interior": bits(inner)}


def _closed_thin_family_union(t, family):
    o = ops(t)
    if any(not t.is_closed(a) or o.interior[a] for a in family):
        return None
    union = 0
    for a in family:
        union |= a
    inner = o.interior[union]
    if inner:
        return {"family": [bits(a) for a in family], "interior": bits(inner)}


# -- statements about continuous maps -----------------------------------------

def _preimage_thin(y, z, f):
    oz, oy = ops(z), ops(y)
    for b in range(1 << z.n):
        if oz.interior[b]:
            continue
        inner = oy.interior[preimage(f, b)]
        if inner:
            return _sets(("B", b), ("interior_of_preimage", inner))


def passings_through(y: FiniteTopology, z: FiniteTopology, f, pieces) -> int:
    """Points of ``y`` sent onto a piece boundary whose every neighborhood meets two pieces."""
    oz = ops(z)
    on_boundary = 0
    for p in pieces:
        on_boundary |= oz.boundary[p]
    out = 0
    for x in range(y.n):
        if not on_boundary >> f[x] & 1:
            continue
        if all(not any(image(f, u) & ~p == 0 for p in pieces) for u in y.neighborhoods(x)):
            out |= 1 << x
    return out


def _passings_thin(y, z, f, pieces):
    pt = passings_through(y, z, f, pieces)
    inner = ops(y).interior[pt]
    if inner:
        return _sets(("pieces", [bits(p) for p in pieces]), ("passings", pt), ("interior", inner))


def _passings_nowhere_dense(y, z, f, pieces):
    oy = ops(y)
    pt = passings_through(y, z, f, pieces)
    inner = oy.interior[oy.closure[pt]]
    if inner:
        return _sets(("pieces", [bits(p) for p in pieces]), ("passings", pt),
                     ("interior_of_closure", inner))


def _stays_in_one_piece(y, z, f, pieces):
    if passings_through(y, z, f, pieces):
        return None
    hit = [p for p in pieces if image(f, y.full) & p]
    if len(hit) > 1:
        return {"pieces": [bits(p) for p in pieces], "pieces_hit": [bits(p) for p in hit]}


def _stays_in_one_piece_hausdorff(y, z, f, pieces):
    if not y.hausdorff:
        return None
    return _stays_in_one_piece(y, z, f, pieces)


# -- registry -----------------------------------------------------------------

@dataclass(frozen=True)
class Lemma:
    id: str
    statement: str
    kind: str  # subset | pair | family | map-subset | map-pieces
    check: Callable
    fails_from: int | None
    max_n: int = 4

    def expected(self, n_max: int) -> str:
        return "fails" if self.fails_from is not None and n_max >= self.fails_from else "holds"


REGISTRY: dict[str, Lemma] = {lem.id: lem for lem in [
    Lemma("exterior-boundary-eq-closure-boundary",
          "bd(cl A) == exterior boundary of A", "subset", _exterior_eq_closure_boundary, None),
    Lemma("interior-closure-eq-interior-union-interior-boundary",
          "int(cl A) == int A | interior boundary of A", "subset", _interior_closure_split, None),
    Lemma("boundary-splits",
          "bd A is the disjoint union of its interior and exterior boundaries",
          "subset", _boundary_split, None),
    Lemma("dense-complement-of-thin-set",
          "int B empty => int(cl(Z - B)) == Z", "subset", _dense_complement, None),
    Lemma("interior-boundary-intersection",
          "interior boundary of (A & B) == interior boundary of A & of B",
          "pair", _interior_boundary_meet, 2),
    Lemma("exterior-boundary-intersection",
          "exterior boundary of (A & B) == exterior boundary of A & of B",
          "pair", _exterior_boundary_meet, 2),
    Lemma("int-closure-intersection",
          "int(cl(A & B)) == int(cl A) & int(cl B)", "pair", _interior_closure_meet, 2),
    Lemma("boundary-union-empty-interior",
          "A, B disjoint => int(bd A | bd B) empty", "pair", _boundary_pair_union, 2),
    Lemma("closed-thin-union-empty-interior",
          "A, B disjoint closed with empty interior => int(A | B) empty",
          "pair", _closed_thin_pair_union, None),
    Lemma("boundary-family-union-empty-interior",
          "pairwise disjoint family => int(union of boundaries) empty",
          "family", _boundary_family_union, 2),
    Lemma("closed-thin-family-union-empty-interior",
          "pairwise disjoint closed family with empty interiors => int(union) empty",
          "family", _closed_thin_family_union, None),
    Lemma("preimage-empty-interior",
          "Y connected, f continuous, int B empty => int f^-1(B) empty",
          "map-subset", _preimage_thin, 2, max_n=3),
    Lemma("passings-empty-interior",
          "Y connected, f continuous => passings-through have empty interior",
          "map-pieces", _passings_thin, 2, max_n=3),
    Lemma("passings-nowhere-dense",
          "Y connected, f continuous => passings-through are nowhere dense",
          "map-pieces", _passings_nowhere_dense, 2, max_n=3),
    Lemma("single-piece-without-passings",
          "Y connected Hausdorff, no passings-through => image inside one piece",
          "map-pieces", _stays_in_one_piece_hausdorff, None, max_n=3),
    Lemma("single-piece-without-passings-any-connected",
          "Y connected, no passings-through => image inside one piece",
          "map-pieces", _stays_in_one_piece, None, max_n=3),
]}


@dataclass
class AuditReport:
    lemma: str
    universe: dict
    verdict: str
    certificate: dict | None
    expected: str
    violations: int = 0

    @property
    def as_expected(self) -> bool:
        return self.verdict == self.expected

    def to_json(self):
        return {
            "lemma": self.lemma,
            "universe": self.universe,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "expected": self.expected,
            "violations": self.violations,
        }


# -- sweeping -----------------------------------------------------------------

def _disjoint_families(n):
    """Families of pairwise disjoint nonempty subsets of ``range(n)`` (at least one member)."""
    def partitions(elems):
        if not elems:
            yield []
            return
        first, rest = elems[0], elems[1:]
        for part in partitions(rest):
            yield [1 << first] + part
            for k in range(len(part)):
                yield part[:k] + [part[k] | 1 << first] + part[k + 1:]

    for s in range(1, 1 << n):
        for fam in partitions(bits(s)):
            yield tuple(sorted(fam))


def _piece_partitions(n):
    return [fam for fam in _disjoint_families(n) if sum(fam) == (1 << n) - 1]


def _space_unit(lemma_id, n, idx):
    lem = REGISTRY[lemma_id]
    t = enumerate_topologies(n)[idx]
    cases, violations, first = 0, 0, None
    if lem.kind == "subset":
        args = ((a,) for a in range(1 << n))
    elif lem.kind == "pair":
        args = ((a, b) for a in range(1 << n) for b in range(1 << n))
    else:
        args = ((fam,) for fam in _disjoint_families(n))
    for arg in args:
        cases += 1
        cert = lem.check(t, *arg)
        if cert is not None:
            violations += 1
            if first is None:
                first = {"space": t.to_json(), **cert}
    return cases, violations, first


def _map_unit(lemma_id, ny, iy, nz, iz):
    lem = REGISTRY[lemma_id]
    y = enumerate_topologies(ny)[iy]
    z = enumerate_topologies(nz)[iz]
    cases, violations, first = 0, 0, None
    if not y.connected:
        return cases, violations, first
    piece_sets = _piece_partitions(nz) if lem.kind == "map-pieces" else [None]
    for f in continuous_maps(y, z):
        for pieces in piece_sets:
            cases += 1
            cert = lem.check(y, z, f) if pieces is None else lem.check(y, z, f, pieces)
            if cert is not None:
                violations += 1
                if first is None:
                    first = {"source": y.to_json(), "target": z.to_json(),
                             "map": list(f), **cert}
    return cases, violations, first


def _run_unit(args):
    kind, rest = args[0], args[1:]
    return _space_unit(*rest) if kind == "space" else _map_unit(*rest)


def default_workers() -> int:
    raw = os.environ.get("SYMLIFT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SYMLIFT_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"SYMLIFT_THREADS must be a positive integer, got {raw!r}")
    return value


def audit(lemma_id: str, n_max: int, workers: int | None = None) -> AuditReport:
    """Sweep one registered statement over every finite case up to ``n_max`` points."""
    if lemma_id not in REGISTRY:
        raise KeyError(f"unknown lemma id {lemma_id!r}")
    lem = REGISTRY[lemma_id]
    if not isinstance(n_max, int) or not 1 <= n_max <= lem.max_n:
        raise ValueError(f"n_max for {lemma_id} must be in 1..{lem.max_n}")
    workers = default_workers() if workers is None else workers

    sizes = range(1, n_max + 1)
    if lem.kind.startswith("map"):
        units = [("map", lemma_id, ny, iy, nz, iz)
                 for ny in sizes for iy in range(len(enumerate_topologies(ny)))
                 for nz in sizes for iz in range(len(enumerate_topologies(nz)))]
        universe = {"n_max": n_max, "kind": lem.kind,
                    "connected_sources": sum(t.connected for s in sizes
                                             for t in enumerate_topologies(s))}
    else:
        units = [("space", lemma_id, n, i)
                 for n in sizes for i in range(len(enumerate_topologies(n)))]
        universe = {"n_max": n_max, "kind": lem.kind}
    universe["topologies"] = sum(len(enumerate_topologies(s)) for s in sizes)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_unit, units, chunksize=16))
    else:
        results = [_run_unit(u) for u in units]

    cases = sum(r[0] for r in results)
    violations = sum(r[1] for r in results)
    first = next((r[2] for r in results if r[2] is not None), None)
    universe["cases"] = cases
    return AuditReport(lemma_id, universe, "fails" if first else "holds", first,
                       lem.expected(n_max), violations)


def audit_all(n_max: int, workers: int | None = None) -> list[AuditReport]:
    return [audit(lid, min(n_max, lem.max_n), workers) for lid, lem in REGISTRY.items()]


def replay(lemma_id: str, certificate: dict) -> bool:
    """True if ``certificate`` is a genuine counterexample to the statement."""
    lem = REGISTRY[lemma_id]
    if lem.kind.startswith("map"):
        y = FiniteTopology.from_json(certificate["source"])
        z = FiniteTopology.from_json(certificate["target"])
        f = tuple(certificate["map"])
        if not y.connected or not continuous(f, y, z):
            return False
        if lem.kind == "map-subset":
            b = mask_of(certificate["B"])
            return not ops(z).interior[b] and bool(ops(y).interior[preimage(f, b)])
        pieces = tuple(mask_of(p) for p in certificate["pieces"])
        return lem.check(y, z, f, pieces) is not None
    t = FiniteTopology.from_json(certificate["space"])
    if lem.kind == "subset":
        key = "A" if "A" in certificate else "B"
        return lem.check(t, mask_of(certificate[key])) is not None
    if lem.kind == "pair":
        return lem.check(t, mask_of(certificate["A"]), mask_of(certificate["B"])) is not None
    return lem.check(t, tuple(mask_of(a) for a in certificate["family"])) is not None
