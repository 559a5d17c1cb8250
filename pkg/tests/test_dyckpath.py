from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, strategies as st

from avoidgf.dyckpath import (
    DyckPath,
    DyckWordError,
    enumerate_dyck,
    from_word,
    pyramid,
    reflect,
    shape_stats,
    tunnel_stats,
    tunnels,
)
from avoidgf.permcore import CeilingExceeded
from avoidgf.sequences import catalan, catalan_bounded


def test_validation_reports_index():
    with pytest.raises(DyckWordError) as info:
        DyckPath("UDDU")
    assert info.value.index == 2
    with pytest.raises(DyckWordError) as info:
        DyckPath("UUD")
    assert info.value.index == 3
    with pytest.raises(DyckWordError):
        DyckPath("UXD")


def test_from_word_normalises():
    assert from_word(" udud ").word == "UDUD"
    assert from_word(["U", "D"]).word == "UD"


def test_tunnels_of_example():
    d = DyckPath("UDUUDUUDUDDUUDDD")
    assert tunnel_stats(d) == tunnel_stats(d)
    ts = tunnel_stats(d)
    assert (ts.ct, ts.rt, ts.td0, ts.tdneg) == (1, 4, 2, 4)
    assert len(tunnels(d)) == 8


def test_tunnel_geometry():
    t = tunnels(pyramid(3))
    assert [(x.up_index, x.down_index, x.height) for x in t] == [(0, 5, 0), (1, 4, 1), (2, 3, 2)]
    assert [x.depth for x in t] == [2, 0, -2]
    assert all(x.doubled_midpoint == 6 for x in t)


def test_shape_stats():
    s = shape_stats(DyckPath("UUDDUDUUUDDD"))
    assert (s.height, s.peaks, s.hills, s.valleys) == (3, 3, 1, 2)
    assert s.is_pyramid_sequence
    assert not s.ascents_only_at_start
    assert shape_stats(DyckPath("UUUDUDDD")).ascents_only_at_start
    assert shape_stats(DyckPath("UUDUDD")).height_at_middle == 1
    assert shape_stats(DyckPath("UUUDDD")).height_at_middle == 3


@pytest.mark.parametrize("n", range(9))
def test_enumeration_counts(n):
    paths = list(enumerate_dyck(n))
    assert len(paths) == catalan(n) == len(set(paths))
    assert len(list(enumerate_dyck(n, max_height=2))) == catalan_bounded(n, 2)
    assert len(list(enumerate_dyck(n, symmetric=True))) == comb(n, n // 2)
    assert len(list(enumerate_dyck(n, pyramid_sequence=True))) == (2 ** (n - 1) if n else 1)
    two_peaks = [d for d in paths if shape_stats(d).peaks <= 2]
    assert len(list(enumerate_dyck(n, max_peaks=2))) == len(two_peaks)


def test_constrained_symmetric_paths_are_filtered():
    for n in range(1, 9):
        want = [d for d in enumerate_dyck(n) if reflect(d) == d and shape_stats(d).peaks <= 2]
        got = list(enumerate_dyck(n, symmetric=True, max_peaks=2))
        assert sorted(p.word for p in got) == sorted(p.word for p in want)


def test_ceiling():
    with pytest.raises(CeilingExceeded):
        next(enumerate_dyck(15))


dyck_words = st.integers(min_value=0, max_value=9).flatmap(
    lambda n: st.sampled_from([d.word for d in enumerate_dyck(n)])
)


@given(dyck_words)
def test_one_tunnel_per_up_step(word):
    d = DyckPath(word)
    assert len(tunnels(d)) == d.semilength


@given(dyck_words)
def test_depth_zero_projections_disjoint(word):
    spans = sorted((t.up_index, t.down_index) for t in tunnels(DyckPath(word)) if t.depth == 0)
    assert all(a[1] < b[0] for a, b in zip(spans, spans[1:]))


@given(dyck_words)
def test_reflection_swaps_left_and_right_tunnels(word):
    d = DyckPath(word)
    a, b = tunnel_stats(d), tunnel_stats(reflect(d))
    assert a.ct == b.ct
    assert reflect(reflect(d)) == d
