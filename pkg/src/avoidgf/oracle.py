"""Brute-force ground truth: statistic distributions of enumerated classes,
series built from enumeration, and reports comparing catalog expansions,
bijection properties and inequalities against it."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import gfcatalog
from .bijections import brs, brs_inv, kra, kra_inv, satisfies_c1
from .dyckpath import enumerate_dyck, reflect, shape_stats, tunnel_stats, tunnels
from .permcore import (
    PatternSet,
    as_pattern_set,
    avoiders_by_length,
    check_ceiling,
    contains,
    fixed_points,
    longest_decreasing,
    longest_increasing,
    statistics,
)
from .sequences import catalan, fine
from .series import Series, StatPoly

DEFAULT_NMAX = 9
DEFAULT_NMAX_FP123 = 11
DEFAULT_NMAX_DESCENTS = 8


@dataclass(frozen=True)
class Distribution:
    counts: dict
    n: int
    sigma: PatternSet
    involutions_only: bool = False

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_rows(self) -> list[tuple[int, int, int]]:
        return [(fp, exc, c) for (fp, exc), c in sorted(self.counts.items())]


@lru_cache(maxsize=64)
def _levels(sigma_text: str, n_max: int) -> tuple:
    return tuple(tuple(level) for level in avoiders_by_length(n_max, sigma_text))


def class_levels(sigma, n_max: int) -> tuple:
    """S_0(sigma), ..., S_{n_max}(sigma) as tuples, cached per pattern set."""
    check_ceiling(n_max)
    return _levels(str(as_pattern_set(sigma)), n_max)


def distribution(sigma, n: int, involutions_only: bool = False) -> Distribution:
    ps = as_pattern_set(sigma)
    counts: dict = {}
    for perm in class_levels(ps, n)[n]:
        st = statistics(perm)
        if involutions_only and not st.is_involution:
            continue
        key = (st.fp, st.exc)
        counts[key] = counts.get(key, 0) + 1
    return Distribution(counts, n, ps, involutions_only)


def empirical_series(
    sigma, n_max: int, involutions_only: bool = False, with_descents: bool = False
) -> Series:
    """sum over S_n(sigma) of x^fp q^exc (p^des) z^n; involutions drop q."""
    levels = class_levels(sigma, n_max)
    coeffs = []
    for level in levels:
        terms: dict = {}
        for perm in level:
            st = statistics(perm)
            if involutions_only:
                if not st.is_involution:
                    continue
                key = (st.fp, 0, st.des if with_descents else 0)
            else:
                key = (st.fp, st.exc, st.des if with_descents else 0)
            terms[key] = terms.get(key, 0) + 1
        coeffs.append(StatPoly(terms))
    return Series(coeffs, n_max)


def project(series: Series, stats: str) -> Series:
    """Bring a catalog expansion into the form the oracle produces."""
    if stats == "fpexc":
        return series.specialize(p=1)
    if stats in ("fp", "inv"):
        return series.specialize(q=1, p=1)
    if stats == "fpexcdes1":
        out = [series.coeffs[0]]
        for poly in series.coeffs[1:]:
            if any(c < 1 for (_, _, c), _ in poly.items()):
                raise ValueError("descent marker exponent below 1 for n >= 1")
            out.append(StatPoly({(a, b, c - 1): k for (a, b, c), k in poly.items()}))
        return Series(out)
    return series


def oracle_for(entry: gfcatalog.CatalogEntry, sigma, n_max: int) -> Series:
    if entry.stats == "inv":
        return empirical_series(sigma, n_max, involutions_only=True)
    if entry.stats in ("fpexcdes", "fpexcdes1"):
        return empirical_series(sigma, n_max, with_descents=True)
    emp = empirical_series(sigma, n_max)
    if entry.stats == "fp":
        return emp.specialize(q=1)
    return emp


@dataclass
class VerifyReport:
    entry: str
    n_range: tuple
    status: dict = field(default_factory=dict)
    mismatch: dict | None = None
    wall_time: float = 0.0
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatch is None and all(v == "match" for v in self.status.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        d["status"] = {str(k): v for k, v in self.status.items()}
        d["ok"] = self.ok
        d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def table_row(self) -> str:
        lo, hi = self.n_range
        state = "ok" if self.ok else "MISMATCH"
        row = f"{self.entry:<24} n={lo}..{hi:<3} {state:<9} {self.wall_time:7.2f}s"
        if self.mismatch:
            row += "  " + ", ".join(f"{k}={v}" for k, v in sorted(self.mismatch.items()))
        return row


def render_table(reports: list[VerifyReport]) -> str:
    lines = [r.table_row() for r in reports]
    bad = sum(1 for r in reports if not r.ok)
    lines.append(f"{len(reports) - bad}/{len(reports)} reports match")
    return "\n".join(lines)


def _first_difference(expected: StatPoly, actual: StatPoly) -> tuple:
    e, a = expected.terms, actual.terms
    for mono in sorted(set(e) | set(a)):
        if e.get(mono, 0) != a.get(mono, 0):
            return mono, e.get(mono, 0), a.get(mono, 0)
    return None


def compare_series(label: str, catalog_series: Series, oracle_series: Series, report: VerifyReport, n_lo: int = 0):
    for n in range(n_lo, oracle_series.order + 1):
        diff = _first_difference(oracle_series.coeffs[n], catalog_series.coeffs[n])
        if diff is None:
            report.status.setdefault(n, "match")
        else:
            report.status[n] = "mismatch"
            if report.mismatch is None:
                mono, want, got = diff
                report.mismatch = {
                    "where": label,
                    "n": n,
                    "monomial": "x^%d q^%d p^%d" % mono,
                    "oracle": want,
                    "catalog": got,
                }


def default_nmax(entry: gfcatalog.CatalogEntry) -> int:
    if entry.id == "formula.s2_123":
        return DEFAULT_NMAX_FP123
    if entry.stats in ("fpexcdes", "fpexcdes1") or entry.id == "family.descent_p":
        return DEFAULT_NMAX_DESCENTS
    return DEFAULT_NMAX


def verify_entry(entry_id: str, n_max: int | None = None, param: int | None = None) -> VerifyReport:
    entry = gfcatalog.get_entry(entry_id)
    if n_max is None:
        n_max = default_nmax(entry)
    start = time.perf_counter()
    label_id = entry.id if param is None else f"{entry.id}[k={param}]"
    report = VerifyReport(label_id, (0, n_max))
    params = [param] if (param is not None or not entry.parametric) else list(entry.default_params)
    for k in params:
        expanded = project(entry.expand(n_max, k), entry.stats)
        for ps in entry.pattern_sets(k):
            label = str(ps) if k is None else f"{ps} (k={k})"
            compare_series(label, expanded, oracle_for(entry, ps, n_max), report)
    report.wall_time = time.perf_counter() - start
    return report


def _verify_job(job: tuple) -> VerifyReport:
    entry_id, n_max, param = job
    return verify_entry(entry_id, n_max, param)


def default_jobs(entry_ids=None, n_max: int | None = None) -> list[tuple]:
    ids = sorted(gfcatalog.REGISTRY) if not entry_ids else [gfcatalog.resolve_id(i) for i in entry_ids]
    jobs = []
    for eid in ids:
        entry = gfcatalog.REGISTRY[eid]
        cap = default_nmax(entry) if n_max is None else n_max
        if entry.parametric:
            jobs += [(eid, cap, k) for k in entry.default_params]
        else:
            jobs.append((eid, cap, None))
    return jobs


def run_suite(entry_ids=None, n_max: int | None = None, jobs: int = 1) -> list[VerifyReport]:
    """Verify catalog entries (all by default); ``jobs > 1`` uses worker processes."""
    work = default_jobs(entry_ids, n_max)
    if jobs <= 1:
        return [_verify_job(j) for j in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_job, work))


# ---------------------------------------------------------------------------
# Structural checks on the bijections.

def _check(report: VerifyReport, name: str, n: int, ok: bool, witness=None):
    if ok:
        report.status.setdefault(n, "match")
        return
    report.status[n] = "mismatch"
    if report.mismatch is None:
        report.mismatch = {"check": name, "n": n, "witness": str(witness)}


def depth0_disjoint(d) -> bool:
    """The x-projections of the depth-0 tunnels of ``d`` are pairwise disjoint."""
    spans = sorted((t.up_index, t.down_index) for t in tunnels(d) if t.depth == 0)
    return all(a[1] < b[0] for a, b in zip(spans, spans[1:]))


def verify_structures(n_max: int = 8) -> VerifyReport:
    """Exhaustive checks of kra and brs and the statistics they transport."""
    start = time.perf_counter()
    report = VerifyReport("structures", (0, n_max))
    lv132 = class_levels("132", n_max)
    lv123 = class_levels("123", n_max)
    lv312 = class_levels("312", n_max)
    for n in range(n_max + 1):
        for perm in lv132[n]:
            d = kra(perm, trusted=True)
            ts = tunnel_stats(d)
            st = statistics(perm)
            _check(report, "kra round trip", n, kra_inv(d) == perm, perm)
            _check(report, "fp = ct", n, st.fp == ts.ct, perm)
            _check(report, "exc = rt", n, st.exc == ts.rt, perm)
            _check(report, "lis = height", n, longest_increasing(perm) == shape_stats(d).height, perm)
            _check(report, "lds = peaks", n, longest_decreasing(perm) == shape_stats(d).peaks, perm)
            _check(report, "involution = symmetric (kra)", n,
                   st.is_involution == (reflect(d) == d), perm)
            _check(report, "one tunnel per up-step", n, len(tunnels(d)) == n, perm)
            ss = shape_stats(d)
            _check(report, "avoids 213 = pyramid sequence", n,
                   (not contains(perm, (2, 1, 3))) == ss.is_pyramid_sequence, perm)
            _check(report, "avoids 231 = ascents only at start", n,
                   (not contains(perm, (2, 3, 1))) == ss.ascents_only_at_start, perm)
        for perm in lv312[n]:
            d = kra(perm.complement(), trusted=True)
            ts = tunnel_stats(d)
            st = statistics(perm)
            _check(report, "fp = td0 of complement", n, st.fp == ts.td0, perm)
            _check(report, "exc = tdneg of complement", n, st.exc == ts.tdneg, perm)
            _check(report, "depth-0 tunnels project disjointly", n, depth0_disjoint(d), perm)
        for perm in lv123[n]:
            d = brs(perm, trusted=True)
            st = statistics(perm)
            big = any(perm[i - 1] == i and 2 * i >= n + 1 for i in range(1, n + 1))
            small = any(perm[i - 1] == i and 2 * i < n + 1 for i in range(1, n + 1))
            _check(report, "brs round trip", n, brs_inv(d) == perm, perm)
            _check(report, "big fixed point = middle peak", n, big == d.has_middle_peak(), perm)
            _check(report, "small fixed point = condition C1", n, small == satisfies_c1(d), perm)
            _check(report, "involution = symmetric (brs)", n,
                   st.is_involution == (reflect(d) == d), perm)
        if n >= 1:
            middle = sum(1 for d in enumerate_dyck(n) if d.has_middle_peak())
            _check(report, "middle peaks counted by C_{n-1}", n, middle == catalan(n - 1), middle)
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Inequalities comparing derangement counts.

def derangements(sigma, n: int) -> int:
    return sum(1 for perm in class_levels(sigma, n)[n] if fixed_points(perm) == 0)


def check_inequalities(n_lo: int = 4, n_hi: int = 30, enum_hi: int = 11) -> VerifyReport:
    """s_n^0(132) < s_n^0(123) by enumeration for n_lo <= n <= min(n_hi, enum_hi),
    and the exact bounds F_n < C_n - 2C_{n-1}, C_n > 7/2 C_{n-1} + 1/4 C_{n-2}
    for 13 <= n <= n_hi."""
    start = time.perf_counter()
    report = VerifyReport("inequalities", (n_lo, n_hi))
    top = min(n_hi, enum_hi)
    for n in range(max(n_lo, 0), top + 1):
        d132, d123 = derangements("132", n), derangements("123", n)
        _check(report, "s0(132) = Fine", n, d132 == fine(n), (d132, fine(n)))
        if n >= 4:
            _check(report, "s0(132) < s0(123)", n, d132 < d123, (d132, d123))
    for n in range(max(13, n_lo), n_hi + 1):
        c0, c1, c2 = catalan(n), catalan(n - 1), catalan(n - 2)
        _check(report, "F_n < C_n - 2C_{n-1}", n, fine(n) < c0 - 2 * c1, n)
        _check(report, "C_n > 7/2 C_{n-1} + 1/4 C_{n-2}", n,
               c0 > Fraction(7, 2) * c1 + Fraction(1, 4) * c2, n)
    report.wall_time = time.perf_counter() - start
    return report
