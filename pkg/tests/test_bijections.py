from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from avoidgf.bijections import DomainError, brs, brs_inv, diagram_rows, kra, kra_inv, satisfies_c1
from avoidgf.dyckpath import DyckPath, enumerate_dyck, reflect, tunnel_stats
from avoidgf.permcore import Permutation, avoiders_by_length, statistics


def test_kra_example():
    d = kra(Permutation.parse("6,7,4,3,5,2,8,1"))
    assert d.word == "UDUUDUUDUDDUUDDD"
    ts = tunnel_stats(d)
    assert (ts.ct, ts.rt) == (1, 4)


def test_diagram_rows_example():
    assert diagram_rows(Permutation.parse("6,7,4,3,5,2,8,1")) == [5, 5, 3, 2, 2, 1, 1, 0]


def test_brs_example():
    p = Permutation.parse("9,6,10,4,8,7,3,5,2,1")
    d = brs(p)
    assert d.word == "UUUDDUUDUDDUUDDDUDUD"
    assert brs_inv(d) == p


def _suffix_max_brs(perm):
    # oracle: the path sits at x = max(perm[r:]) while crossing row r
    n = len(perm)
    xs = [max(perm[r:]) for r in range(n)]
    steps, x = [], n
    for row in range(n):
        steps.append("D" * (x - xs[row]))
        steps.append("U")
        x = xs[row]
    steps.append("D" * x)
    return "".join(steps)


def _prefix_min_kra(perm):
    # oracle: row r's unshaded length is min(perm[:r+1]) - 1
    rows, cur = [], None
    for v in perm:
        cur = v if cur is None else min(cur, v)
        rows.append(cur - 1)
    steps, x = [], 0
    for length in reversed(rows):
        steps.append("D" * (length - x))
        steps.append("U")
        x = length
    steps.append("D" * (len(perm) - x))
    return "".join(steps)


@pytest.mark.parametrize("n", range(8))
def test_against_closed_oracles(n):
    for p in avoiders_by_length(n, "132")[n]:
        assert kra(p, trusted=True).word == _prefix_min_kra(p)
    for p in avoiders_by_length(n, "123")[n]:
        assert brs(p, trusted=True).word == _suffix_max_brs(p)


def test_domain_errors():
    with pytest.raises(DomainError):
        kra(Permutation((1, 3, 2)))
    with pytest.raises(DomainError):
        brs(Permutation((1, 2, 3)))


def test_empty():
    assert kra(Permutation(())).word == ""
    assert brs_inv(DyckPath("")) == ()


paths7 = st.integers(min_value=0, max_value=7).flatmap(
    lambda n: st.sampled_from([d.word for d in enumerate_dyck(n)])
)


@given(paths7)
def test_inverse_maps_round_trip(word):
    d = DyckPath(word)
    assert kra(kra_inv(d)) == d
    assert brs(brs_inv(d)) == d


@given(paths7)
def test_symmetric_paths_are_involutions(word):
    d = DyckPath(word)
    assert kra_inv(d).is_involution() == (reflect(d) == d)
    assert brs_inv(d).is_involution() == (reflect(d) == d)


@pytest.mark.parametrize("n", range(1, 8))
def test_fixed_point_characterisations(n):
    for p in avoiders_by_length(n, "123")[n]:
        d = brs(p, trusted=True)
        fps = [i for i in range(1, n + 1) if p[i - 1] == i]
        assert any(2 * i >= n + 1 for i in fps) == d.has_middle_peak()
        assert any(2 * i < n + 1 for i in fps) == satisfies_c1(d)


@pytest.mark.parametrize("n", range(8))
def test_312_statistics_through_complement(n):
    for p in avoiders_by_length(n, "312")[n]:
        ts = tunnel_stats(kra(p.complement(), trusted=True))
        st_ = statistics(p)
        assert (st_.fp, st_.exc) == (ts.td0, ts.tdneg)
