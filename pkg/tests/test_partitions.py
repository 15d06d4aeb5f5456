from collections import Counter
from functools import lru_cache
from itertools import product
from math import comb, factorial

import pytest

from symlift.core import PieceId, classify
from symlift.partitions import (JVector, Partition, choice_vectors, count_piece_points,
                                enumerate_partitions, enumerate_pieces, jvector_of,
                                partition_of, set_partition_count, set_partitions,
                                sim_classes, sim_related)


@lru_cache(maxsize=None)
def _p(n, k):
    """Partitions of n into parts of size at most k."""
    if n == 0:
        return 1
    if k == 0:
        return 0
    return _p(n, k - 1) + (_p(n - k, k) if n >= k else 0)


def _bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def test_partition_counts_against_recursion():
    counts = [len(enumerate_partitions(m)) for m in range(1, 11)]
    assert counts == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert counts == [_p(m, m) for m in range(1, 11)]


def test_partitions_of_four():
    got = {p.parts for p in enumerate_partitions(4)}
    assert got == {(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)}
    assert enumerate_partitions(4)[0].parts == (1, 1, 1, 1)


def test_jvector_examples_and_round_trip():
    assert jvector_of(Partition.from_parts([2, 1, 1])) == JVector(2, (2,))
    assert jvector_of(Partition.from_parts([4])) == JVector(0, (4,))
    for m in range(1, 11):
        for tau in enumerate_partitions(m):
            assert partition_of(jvector_of(tau)) == tau


def test_sim_classes():
    t4 = sim_classes(4)
    assert t4.M == 4
    two = t4.classes[t4.class_of(Partition.from_parts([2, 2]))]
    assert {p.parts for p in two} == {(2, 2), (3, 1)}
    t5 = sim_classes(5)
    assert t5.M == 5 and t5.m_alpha == (1, 1, 2, 2, 1)
    assert sim_classes(1).M == 1
    for m in range(1, 11):
        t = sim_classes(m)
        assert sum(t.m_alpha) == len(enumerate_partitions(m))
        assert t.M == m
        for cls in t.classes:
            assert all(sim_related(a, b) for a in cls for b in cls)


def test_choice_vectors_pick_one_per_class():
    for m in range(1, 7):
        t = sim_classes(m)
        vecs = choice_vectors(m)
        expected = 1
        for size in t.m_alpha:
            expected *= size
        assert len(vecs) == expected
        assert all(len(v) == t.M for v in vecs)


def test_bad_m_rejected():
    for bad in (0, 31, -2):
        with pytest.raises(ValueError):
            enumerate_partitions(bad)


def test_pieces_are_bell_many():
    assert len(enumerate_pieces(2)) == 2
    for m in range(1, 8):
        assert len(list(set_partitions(m))) == _bell(m)


def test_small_scope_counts_match_multinomial():
    for vec in choice_vectors(4):
        got = enumerate_pieces(4, "small", vec)
        assert len(got) == sum(factorial(4) // _multinomial_denominator(t) for t in vec)
        assert len(got) == sum(set_partition_count(t) for t in vec)


def _multinomial_denominator(tau):
    out = 1
    for i, a in enumerate(tau.alpha, start=1):
        out *= factorial(i) ** a * factorial(a)
    return out


def test_piece_counts_against_brute_force():
    assert count_piece_points(3, PieceId(((0,), (1,)))) == 6
    assert count_piece_points(3, PieceId(((0, 1),))) == 3
    for q in range(1, 5):
        for m in range(1, 5):
            seen = Counter(classify(t) for t in product(range(q), repeat=m))
            pieces = enumerate_pieces(m)
            assert sum(count_piece_points(q, p) for p in pieces) == q ** m
            for p in pieces:
                assert count_piece_points(q, p) == seen.get(p, 0)


def test_quotient_size_formulas_from_pieces():
    # orbits of the principal piece and the pattern shapes give |SP| and |F| independently
    for q in range(1, 5):
        for m in range(1, 5):
            sp = {tuple(sorted(t)) for t in product(range(q), repeat=m)}
            f = {frozenset(t) for t in product(range(q), repeat=m)}
            assert len(sp) == comb(q + m - 1, m)
            assert len(f) == sum(comb(q, k) for k in range(1, m + 1))
