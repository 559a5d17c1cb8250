from __future__ import annotations

from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from avoidgf.permcore import (
    CEILING_ENV,
    CeilingExceeded,
    PatternSet,
    Permutation,
    avoiders_by_length,
    avoids,
    contains,
    descents,
    enumerate_avoiders,
    excedances,
    fixed_points,
    longest_decreasing,
    longest_increasing,
    statistics,
    transform,
)

S3 = ["123", "132", "213", "231", "312", "321"]


def naive_contains(perm, pattern):
    k = len(pattern)
    order = sorted(range(k), key=lambda i: pattern[i])
    for idx in combinations(range(len(perm)), k):
        vals = [perm[i] for i in idx]
        if sorted(range(k), key=lambda i: vals[i]) == order:
            return True
    return False


perm_strategy = st.integers(min_value=0, max_value=8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
)


def test_parse_and_print():
    p = Permutation.parse("6,7,4,3,5,2,8,1")
    assert p == (6, 7, 4, 3, 5, 2, 8, 1)
    assert str(p) == "6,7,4,3,5,2,8,1"
    assert Permutation.parse("132") == (1, 3, 2)
    assert Permutation.parse("") == ()
    assert Permutation.parse("9,6,10,4,8,7,3,5,2,1").n == 10


@pytest.mark.parametrize("bad", ["1,1,2", "0,1", "2,3", "1a"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Permutation.parse(bad)


def test_statistics_examples():
    st1 = statistics(Permutation.parse("6,7,4,3,5,2,8,1"))
    assert st1.as_dict() == {"fp": 1, "exc": 4, "des": 4, "involution": False}
    st2 = statistics(Permutation.parse("9,6,10,4,8,7,3,5,2,1"))
    assert (st2.fp, st2.exc, st2.des) == (1, 5, 6)
    assert statistics(Permutation(())).as_dict() == {"fp": 0, "exc": 0, "des": 0, "involution": True}
    assert statistics(Permutation((2, 1, 3))).is_involution


@given(perm_strategy)
def test_stat_helpers_agree(perm):
    st_ = statistics(perm)
    assert st_.fp == fixed_points(perm)
    assert st_.exc == excedances(perm)
    assert st_.des == descents(perm)


@given(perm_strategy)
def test_fp_exc_and_inverse_excedances_sum_to_n(perm):
    p = Permutation(perm)
    assert fixed_points(p) + excedances(p) + excedances(p.inverse()) == len(p)


@given(perm_strategy)
def test_transforms_are_involutions(perm):
    p = Permutation(perm)
    for kind in ("complement", "hat", "inverse"):
        assert transform(transform(p, kind), kind) == p


@given(perm_strategy)
def test_hat_preserves_fixed_points_and_excedances(perm):
    p = Permutation(perm)
    h = p.hat()
    assert fixed_points(h) == fixed_points(p)
    assert excedances(h) == excedances(p)


def test_hat_example():
    # reflection in the secondary diagonal of 2,3,1
    assert Permutation((2, 3, 1)).hat() == (2, 3, 1)
    assert Permutation((1, 3, 2)).hat() == (2, 1, 3)


@given(perm_strategy, st.sampled_from(S3))
def test_contains_matches_naive(perm, pat):
    pattern = Permutation.parse(pat)
    assert contains(perm, pattern) == naive_contains(perm, pattern)


@given(perm_strategy, st.permutations([1, 2, 3, 4]))
def test_contains_length_four(perm, pattern):
    assert contains(perm, pattern) == naive_contains(perm, pattern)


def test_pattern_set_parse_and_transform():
    ps = PatternSet.parse("312/123")
    assert str(ps) == "123/312"
    assert str(ps.transformed("inverse")) == "123/231"
    assert str(ps.transformed("complement")) == "132/321"
    with pytest.raises(ValueError):
        PatternSet([])


@pytest.mark.parametrize("pat", S3)
def test_single_patterns_give_catalan(pat):
    levels = avoiders_by_length(8, pat)
    assert [len(level) for level in levels] == [comb(2 * n, n) // (n + 1) for n in range(9)]


@pytest.mark.parametrize("sigma", ["123/132", "132/213/321", "2413/3142", "1234"])
def test_pruned_generation_matches_filter(sigma):
    for n in range(7):
        fast = list(enumerate_avoiders(n, sigma))
        slow = [Permutation(p) for p in permutations(range(1, n + 1)) if avoids(p, sigma)]
        assert fast == sorted(slow) or sorted(fast) == sorted(slow)


def test_involutions_only():
    assert sorted(enumerate_avoiders(3, "123", involutions_only=True)) == [(1, 3, 2), (2, 1, 3), (3, 2, 1)]


def test_ceiling(monkeypatch):
    monkeypatch.setenv(CEILING_ENV, "5")
    with pytest.raises(CeilingExceeded):
        list(enumerate_avoiders(6, "123"))
    assert len(list(enumerate_avoiders(6, "123", ceiling=6))) == 132
    monkeypatch.setenv(CEILING_ENV, "many")
    with pytest.raises(ValueError):
        list(enumerate_avoiders(3, "123"))


def test_longest_monotone():
    p = Permutation.parse("6,7,4,3,5,2,8,1")
    assert longest_increasing(p) == 3
    assert longest_decreasing(p) == 5
    assert longest_increasing(()) == 0
