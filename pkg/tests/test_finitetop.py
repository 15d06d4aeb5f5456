from itertools import product

import pytest

from symlift.finitetop import (REGISTRY, FiniteTopology, audit, audit_all, bits,
                               build_quotients, continuous_maps, enumerate_topologies,
                               mask_of, replay)
from symlift.finitetop.audit import default_workers


def _brute_topologies(n):
    full = (1 << n) - 1
    subsets = range(1 << n)
    out = set()
    for choice in product((0, 1), repeat=1 << n):
        fam = {s for s, c in zip(subsets, choice) if c}
        if 0 not in fam or full not in fam:
            continue
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.add(frozenset(fam))
    return out


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 29)])
def test_topology_counts_against_axiom_filter(n, count):
    got = {t.opens for t in enumerate_topologies(n)}
    assert len(got) == count
    assert got == _brute_topologies(n)


def test_four_point_count():
    assert len(enumerate_topologies(4)) == 355


def _oracle_ops(t, a):
    opens = t.opens
    full = t.full
    interior = max((u for u in opens if u & ~a == 0), key=lambda u: bin(u).count("1"))
    closure = full & ~max((u for u in opens if u & a == 0), key=lambda u: bin(u).count("1"))
    boundary = closure & ~interior
    bi = be = 0
    for x in bits(boundary):
        nbhds = [u for u in opens if u >> x & 1]
        thin = [u for u in nbhds if t.interior(u & ~a) == 0]
        if thin:
            bi |= 1 << x
        else:
            be |= 1 << x
    return interior, closure, boundary, bi, be


def test_operators_against_definitions():
    for n in range(1, 4):
        for t in enumerate_topologies(n):
            for a in range(1 << n):
                ops = t.boundary_operators(a)
                got = (ops["interior"], ops["closure"], ops["boundary"],
                       ops["boundary_interior"], ops["boundary_exterior"])
                assert got == _oracle_ops(t, a)


def test_sierpinski_example():
    t = FiniteTopology(2, frozenset({0, 0b10, 0b11}))
    ops = t.boundary_operators(0b10)
    assert ops["boundary"] == 0b01
    assert ops["boundary_exterior"] == 0
    assert ops["boundary_interior"] == 0b01
    assert t.interior(t.closure(0b10)) == 0b11


def test_empty_set_operators_vanish():
    for t in enumerate_topologies(3):
        assert set(t.boundary_operators(0).values()) == {0}


def test_indiscrete_pair():
    ops = FiniteTopology.indiscrete(2).boundary_operators(0b01)
    assert ops["boundary"] == 0b11
    assert ops["boundary_interior"] == 0b11
    assert ops["boundary_exterior"] == 0


def test_bad_topology_rejected():
    with pytest.raises(ValueError):
        FiniteTopology(2, frozenset({0, 1, 2, 3}) - {3})
    with pytest.raises(ValueError):
        FiniteTopology(3, frozenset({0, 0b001, 0b010, 0b111}))


def test_continuous_maps_against_brute_force():
    for y in enumerate_topologies(2):
        for z in enumerate_topologies(2):
            brute = []
            for f in product(range(2), repeat=2):
                pre = lambda b: sum(1 << i for i in range(2) if b >> f[i] & 1)
                if all(y.is_open(pre(u)) for u in z.opens):
                    brute.append(tuple(f))
            assert sorted(continuous_maps(y, z)) == sorted(brute)


def test_holding_statements_hold_at_three_points():
    r = audit("exterior-boundary-eq-closure-boundary", 3)
    assert r.verdict == "holds" and r.certificate is None
    assert r.universe["topologies"] == 1 + 4 + 29
    r = audit("interior-closure-eq-interior-union-interior-boundary", 3)
    assert r.verdict == "holds"


def test_interior_boundary_intersection_certificate():
    r = audit("interior-boundary-intersection", 2)
    assert r.verdict == "fails" and r.as_expected
    cert = r.certificate
    t = FiniteTopology.from_json(cert["space"])
    assert t.opens == FiniteTopology.indiscrete(2).opens
    a, b = mask_of(cert["A"]), mask_of(cert["B"])
    assert t.boundary_interior(a & b) != t.boundary_interior(a) & t.boundary_interior(b)
    assert replay(r.lemma, cert)


def test_int_closure_intersection_certificate():
    r = audit("int-closure-intersection", 2)
    assert r.verdict == "fails"
    cert = r.certificate
    t = FiniteTopology.from_json(cert["space"])
    a, b = mask_of(cert["A"]), mask_of(cert["B"])
    assert t.interior(t.closure(a & b)) == 0
    assert t.interior(t.closure(a)) & t.interior(t.closure(b)) == t.full
    assert replay(r.lemma, cert)


def test_replay_rejects_non_counterexamples():
    cert = audit("interior-boundary-intersection", 2).certificate
    fake = dict(cert, A=[0], B=[0])
    assert not replay("interior-boundary-intersection", fake)


def test_all_audits_match_registry_and_replay():
    for r in audit_all(3):
        assert r.as_expected, r.lemma
        if r.certificate is not None:
            assert replay(r.lemma, r.certificate)


def test_parallel_sweep_is_identical(monkeypatch):
    serial = [r.to_json() for r in audit_all(3, workers=1)]
    monkeypatch.setenv("SYMLIFT_THREADS", "2")
    assert default_workers() == 2
    assert [r.to_json() for r in audit_all(3)] == serial


@pytest.mark.parametrize("raw", ["0", "-1", "two", "1.5"])
def test_thread_variable_validated(monkeypatch, raw):
    monkeypatch.setenv("SYMLIFT_THREADS", raw)
    with pytest.raises(ValueError):
        default_workers()


def test_audit_argument_errors():
    with pytest.raises(KeyError):
        audit("no-such-lemma", 2)
    with pytest.raises(ValueError):
        audit("boundary-splits", 5)


# -- quotients ------------------------------------------------------------------

def test_quotient_sizes_discrete():
    for q, m, sp, f in [(3, 2, 6, 6), (3, 3, 10, 7), (2, 4, 5, 3)]:
        b = build_quotients(FiniteTopology.discrete(q), m)
        assert (b.sp_space.size, b.f_space.size) == (sp, f)
        assert b.checks.ok


def test_m_one_quotients_are_the_space():
    for t in enumerate_topologies(3):
        b = build_quotients(t, 1)
        for space, point in ((b.sp_space, lambda e: e.points[0]),
                             (b.f_space, lambda e: e.support[0])):
            to_x = [point(e) for e in space.elements]
            assert sorted(to_x) == [0, 1, 2]
            opens = {mask_of(to_x[k] for k in bits(u)) for u in space.topology().opens}
            assert opens == set(t.opens)


def test_sp_quotient_opens_are_saturated_product_opens():
    # independent oracle: a set of multisets is open iff its preimage is open in X^m
    t = enumerate_topologies(2)[1]
    b = build_quotients(t, 2)
    prod_space = b.sp_space.product
    top = b.sp_space.topology()
    for c in range(1 << b.sp_space.size):
        pre = b.sp_space.preimage(c)
        pts = [prod_space.points[i] for i in bits(pre)]
        product_open = all(
            all(prod_space.index[(u, v)] in bits(pre)
                for u in bits(t.minimal_open[p[0]]) for v in bits(t.minimal_open[p[1]]))
            for p in pts)
        assert top.is_open(c) == product_open


def test_phi_open_and_saturations_hold_on_discrete_spaces():
    for q in range(1, 4):
        for m in range(1, 4):
            assert build_quotients(FiniteTopology.discrete(q), m).checks.ok


def test_sp_map_open_and_saturation_on_every_small_space():
    for n in range(1, 4):
        for t in enumerate_topologies(n):
            for m in range(1, 4):
                c = build_quotients(t, m).checks
                assert not c.sp_open_failures
                assert not c.sp_saturation_failures
                assert not c.f_saturation_failures


def test_support_map_not_open_on_non_t1_space():
    # X = {0,1,2} with opens {}, {0}, X; V = {0} x {0} x X
    t = FiniteTopology(3, frozenset({0, 0b001, 0b111}))
    b = build_quotients(t, 3)
    fq = b.f_space
    prod_space = fq.product
    v = prod_space.box((0b001, 0b001, 0b111))
    assert prod_space.is_open(v)
    image = fq.image(v)
    assert not fq.is_open(image)
    # (1,1,0) maps into the image but its smallest open box reaches support {0,1,2}
    assert fq.class_of[prod_space.index[(1, 1, 0)]] in bits(image)
    assert fq.class_of[prod_space.index[(1, 2, 0)]] not in bits(image)
    assert b.checks.f_open_failures


def test_quotient_size_bound():
    with pytest.raises(ValueError):
        build_quotients(FiniteTopology.discrete(4), 11)
