"""Counting sequences used by the generating functions: Catalan and
height-bounded Catalan numbers, Fibonacci, Fine and ballot numbers, bounded
lattice-path counts, and the closed fixed-point counts for 123-avoiders and
for pattern-avoiding involutions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .series import ONE, Series, StatPoly, series_div

SEQUENCE_NAMES = ("catalan", "catalan_bounded", "fibonacci", "fine", "ballot", "g_chebyshev")


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero when a < 0 or b is out of range."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        return 0
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _bounded_walks(steps: int, top: int, start: int) -> tuple:
    """Counts of +-1 walks of each length 0..steps from ``start`` inside
    [0, top]: returns a tuple of per-height count tuples."""
    row = [0] * (top + 1)
    row[start] = 1
    rows = [tuple(row)]
    for _ in range(steps):
        nxt = [0] * (top + 1)
        for y, c in enumerate(row):
            if c:
                if y > 0:
                    nxt[y - 1] += c
                if y < top:
                    nxt[y + 1] += c
        row = nxt
        rows.append(tuple(row))
    return tuple(rows)


def catalan_bounded(i: int, h: int) -> int:
    """Dyck paths of semilength ``i`` and height at most ``h``."""
    if i < 0:
        return 0
    if h < 0:
        return 0
    if h >= i:
        return catalan(i)
    return _bounded_walks(2 * i, h, 0)[2 * i][0]


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(max(n, 0)):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def fine(n: int) -> int:
    """F_0 = 1, F_1 = 0, F_2 = 1, F_3 = 2, F_4 = 6, ..."""
    if n == 0:
        return 1
    total = Fraction(0)
    for i in range(n - 1):
        total += Fraction(-1, 2) ** i * catalan(n - i)
    total /= 2
    if total.denominator != 1:
        raise ArithmeticError(f"Fine number {n} is not an integer: {total}")
    return int(total)


def ballot(n: int, k: int) -> int:
    """(k+1)/(n+1) * C(n+1, (n-k)/2): nonnegative walks of length n ending at height k."""
    if n < 0 or k < 0 or k > n or (n - k) % 2:
        return 0
    value = Fraction(k + 1, n + 1) * comb(n + 1, (n - k) // 2)
    return int(value)


def g_chebyshev(k: int, ell: int, n: int) -> int:
    """Walks of n steps from height 0 to height k - ell staying in [0, k]."""
    if not 0 <= ell <= k or n < 0:
        return 0
    return _bounded_walks(n, k, 0)[n][k - ell]


def sequence(name: str, *args: int) -> int:
    table = {
        "catalan": catalan,
        "catalan_bounded": catalan_bounded,
        "fibonacci": fibonacci,
        "fine": fine,
        "ballot": ballot,
        "g_chebyshev": g_chebyshev,
    }
    try:
        fn = table[name]
    except KeyError:
        raise ValueError(f"unknown sequence {name!r}; expected one of {SEQUENCE_NAMES}") from None
    if any(a < 0 for a in args):
        raise ValueError("sequence arguments must be nonnegative")
    return fn(*args)


# Chebyshev quotients, used only to cross-check the lattice DP.

def chebyshev_w(m: int, order: int) -> Series:
    """W_m(z) with U_m(1/(2z)) = z^(-m) W_m(z): W_0 = W_1 = 1, W_m = W_{m-1} - z^2 W_{m-2}."""
    prev, cur = Series.one(order), Series.one(order)
    if m == 0:
        return prev
    z2 = Series.z(order, 2)
    for _ in range(m - 1):
        prev, cur = cur, cur - z2 * prev
    return cur


def chebyshev_g_series(k: int, ell: int, order: int) -> Series:
    """U_ell(1/2z) / (z U_{k+1}(1/2z)) = z^(k-ell) W_ell(z) / W_{k+1}(z)."""
    return series_div(chebyshev_w(ell, order), chebyshev_w(k + 1, order)).shift(k - ell)


def chebyshev_bounded_series(h: int, order: int) -> Series:
    """sum_i C_i^{<=h} z^i as W_h(sqrt z) / W_{h+1}(sqrt z)."""
    wide = 2 * order
    ratio = series_div(chebyshev_w(h, wide), chebyshev_w(h + 1, wide))
    return Series([ratio.coeffs[2 * i] for i in range(order + 1)])


def catalan_series(order: int, bound: int | None = None, below: int | None = None) -> Series:
    """sum_j C_j z^j (or C_j^{<=bound}), optionally only the terms with j < below."""
    top = order if below is None else min(order, below - 1)
    coeffs = []
    for j in range(top + 1):
        c = catalan(j) if bound is None else catalan_bounded(j, bound)
        coeffs.append(StatPoly.const(c))
    return Series(coeffs, order)


# Fixed points of 123-avoiders.

def f_helper(k: int, r: int, h: int, ell: int) -> int:
    """Nonnegative paths (0, r) -> (ell, h) with exactly k peaks that start
    and end with an up-step, in closed form."""
    if k == 0:
        return 1 if ell == h - r else 0
    if k < 0 or (ell + h + r) % 2:
        return 0
    up = (ell + h - r) // 2
    down = (ell - h + r) // 2
    refl_down = (ell - h - r) // 2
    refl_up = (ell + h + r) // 2
    return binom(up - 1, k) * binom(down - 1, k - 1) - binom(refl_down - 1, k) * binom(refl_up - 1, k - 1)


def _prefix_paths(i: int, r: int) -> int:
    return binom(2 * i - r - 1, i - 1) - binom(2 * i - r - 1, i)


@lru_cache(maxsize=None)
def s2_123(n: int) -> int:
    """Number of 123-avoiders of length n with two fixed points."""
    total = 0
    for i in range(1, n):
        m = n - 2 * i
        if m < 0:
            break
        for r in range(1, i + 1):
            ar = _prefix_paths(i, r)
            if not ar:
                continue
            for s in range(1, i + 1):
                as_ = _prefix_paths(i, s)
                if not as_:
                    continue
                inner = 0
                for h in range(n % 2 or 2, n + 1, 2):
                    for k in range(m + 1):
                        left = f_helper(k, r, h, m + r)
                        if left:
                            inner += left * f_helper(m - k, s, h, m + s)
                total += ar * as_ * inner
    return total


def bigsmall_counts(n: int) -> tuple[int, int]:
    """(#with a big fixed point, #with a small fixed point) among 123-avoiders."""
    if n < 1:
        raise ValueError("n must be positive")
    big = catalan(n - 1)
    if n % 2 == 0:
        return big, big
    return big, big - catalan((n - 1) // 2) ** 2


def s123_distribution(n: int) -> tuple[int, int, int]:
    """(s0, s1, s2): 123-avoiders of length n with 0, 1, 2 fixed points."""
    if n < 1:
        raise ValueError("n must be positive")
    s2 = s2_123(n)
    correction = 0 if n % 2 == 0 else catalan((n - 1) // 2) ** 2
    s1 = 2 * (catalan(n - 1) - s2) - correction
    s0 = catalan(n) - 2 * catalan(n - 1) + s2 + correction
    return s0, s1, s2


# Involutions.

INVOLUTION_CLASSES = {
    "123": "123",
    "132": "132", "213": "132", "321": "132",
    "231": "231", "312": "231",
}


@lru_cache(maxsize=None)
def _inv_231_counts(n: int) -> tuple:
    # (1 - z^2) / (1 - x z - 2 z^2): g_n = x g_{n-1} + 2 g_{n-2} (+ the numerator)
    polys: list[dict] = []
    for m in range(n + 1):
        cur: dict = {}
        if m == 0:
            cur[0] = 1
        if m == 2:
            cur[0] = cur.get(0, 0) - 1
        if m >= 1:
            for k, c in polys[m - 1].items():
                cur[k + 1] = cur.get(k + 1, 0) + c
        if m >= 2:
            for k, c in polys[m - 2].items():
                cur[k] = cur.get(k, 0) + 2 * c
        polys.append({k: c for k, c in cur.items() if c})
    return tuple(sorted(polys[n].items()))


def involution_counts(pattern: str, n: int, k: int) -> int:
    """Involutions of length n avoiding ``pattern`` with exactly k fixed points."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    try:
        cls = INVOLUTION_CLASSES[str(pattern)]
    except KeyError:
        raise ValueError(f"not a pattern of length 3: {pattern!r}") from None
    if n == 0:
        return 1 if k == 0 else 0
    if (n - k) % 2:
        return 0
    if cls == "123":
        if k >= 3:
            return 0
        if n % 2 == 0:
            return binom(n - 1, n // 2) if k in (0, 2) else 0
        return binom(n, (n - 1) // 2) if k == 1 else 0
    if cls == "132":
        return ballot(n, k)
    return dict(_inv_231_counts(n)).get(k, 0)
