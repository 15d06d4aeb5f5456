import numpy as np
import pytest

from symlift import fixtures as fx
from symlift.core import LINE, FClass, SPClass, classify
from symlift.errors import ClassificationAmbiguity, InputMismatch
from symlift.regions import (SampledRegion, check_empty_interior, check_single_piece,
                             segment)


def test_crossing_segmentation():
    region = fx.crossing()
    seg = segment(region)
    assert len(seg.segments) == 3
    principal = [s for s in seg.segments if s.label == (1, 1)]
    assert len(principal) == 2
    assert [s.nodes for s in seg.segments if s.label == (2,)] == [(10,)]
    assert len(seg.events) == 2
    assert seg.passing_nodes == {10}


def test_constant_regions_have_no_events():
    for region in (fx.constant(), fx.constant((5, 5))):
        seg = segment(region)
        assert len(seg.segments) == 1 and not seg.events
        assert check_empty_interior(region, seg)["holds"]
        verdict = check_single_piece(region, seg)
        assert verdict["single"] and verdict["labels"] == [(1, 1, 1)]


def test_segmentation_is_a_partition():
    for region in (fx.crossing(), fx.collapsing_triple(), fx.diagonal_run(), fx.rotating_grid(8)):
        seg = segment(region)
        covered = sorted(v for s in seg.segments for v in s.nodes)
        assert covered == list(range(region.size))
        changing = [(u, v) for u, v, _ in region.edges() if seg.labels[u] != seg.labels[v]]
        assert [e.edge for e in seg.events] == changing
        for s in seg.segments:
            assert all(seg.labels[v] == s.label for v in s.nodes)


def test_labels_match_classify():
    region = fx.collapsing_triple()
    seg = segment(region)
    for v in range(region.size):
        assert seg.labels[v] == classify(region.points(v), 0.0, LINE).shape


def test_transposition_transposes_segments():
    samples = []
    rng = np.random.default_rng(3)
    for _ in range(4 * 6):
        a = float(rng.integers(0, 3))
        b = float(rng.integers(0, 3))
        samples.append(SPClass(tuple(sorted((a, b)))))
    region = SampledRegion("sp", 2, (4, 6), samples, 0.0, LINE)
    seg = segment(region)
    tseg = segment(region.transposed())
    t = region.transposed()

    def parts(r, s):
        return {frozenset(r.grid_index(v)[::-1] if r is t else r.grid_index(v)
                          for v in x.nodes) for x in s.segments}

    assert parts(region, seg) == parts(t, tseg)
    assert len(seg.events) == len(tseg.events)


def test_empty_interior_on_diagonal_run_holds():
    region = fx.diagonal_run(3)
    seg = segment(region)
    verdict = check_empty_interior(region, seg)
    assert verdict["holds"]
    assert verdict["passing_nodes"] == [2, 4]


def test_empty_interior_failure_is_reported():
    region = fx.collapsing_triple()
    verdict = check_empty_interior(region, segment(region))
    assert not verdict["holds"]
    assert verdict["ball"] == [1, 2, 3]


def test_single_piece_on_crossing_lists_both_types():
    region = fx.crossing()
    verdict = check_single_piece(region, segment(region))
    assert not verdict["single"]
    assert set(verdict["labels"]) == {(1, 1), (2,)}


def test_random_piece_constant_regions():
    rng = np.random.default_rng(20240)
    for _ in range(100):
        region = fx.jittered_constant(rng, 0.01)
        seg = segment(region)
        verdict = check_single_piece(region, seg)
        assert verdict["single"] and not seg.events


def test_ambiguous_node_reported():
    bad = SampledRegion("sp", 3, (2,), [SPClass((0.0, 0.5, 1.0)),
                                        SPClass((0.0, 0.008, 0.016))], 0.01, LINE)
    with pytest.raises(ClassificationAmbiguity) as info:
        segment(bad)
    assert info.value.node == 1


def test_region_validation():
    with pytest.raises(InputMismatch):
        SampledRegion("sp", 2, (3,), [SPClass((0.0, 1.0))] * 2, 0.0, LINE)
    with pytest.raises(InputMismatch):
        SampledRegion("sp", 2, (1,), [SPClass((1.0, 0.0))], 0.0, LINE)
    with pytest.raises(InputMismatch):
        SampledRegion("f", 2, (1,), [FClass((0.0, 1.0, 2.0))], 0.0, LINE)
    with pytest.raises(InputMismatch):
        SampledRegion("xx", 2, (1,), [SPClass((0.0, 1.0))], 0.0, LINE)


def test_f_mode_labels_are_support_sizes():
    region = fx.support_jump()
    seg = segment(region)
    assert seg.labels[0] == 1 and set(seg.labels[1:]) == {2}
    assert seg.passing_nodes == {0}
