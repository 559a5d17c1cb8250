"""Permutations in one-line notation, their statistics and trivial symmetries,
pattern containment, and pruned generation of pattern-avoiding classes.

Permutations are 1-based: ``Permutation((2, 3, 1))`` sends 1 to 2, 2 to 3 and
3 to 1.  The empty permutation is valid.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_CEILING = 12
CEILING_ENV = "AVOIDGF_CEILING"

TRANSFORMS = ("complement", "hat", "inverse")


class CeilingExceeded(ValueError):
    """Raised when a brute-force request exceeds the configured size limit."""


def brute_force_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CEILING_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{CEILING_ENV} must be nonnegative, got {value}")
    return value


def check_ceiling(n: int, ceiling: int | None = None, what: str = "permutations") -> None:
    limit = brute_force_ceiling() if ceiling is None else ceiling
    if n > limit:
        raise CeilingExceeded(
            f"refusing to enumerate {what} of size {n}: brute-force ceiling is {limit} "
            f"(raise it with {CEILING_ENV} if you really mean it)"
        )


class Permutation(tuple):
    """A permutation of 1..n in one-line notation (an immutable tuple)."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        perm = tuple.__new__(cls, (int(e) for e in entries))
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{tuple(perm)} is not a rearrangement of 1..{len(perm)}")
        return perm

    @classmethod
    def trusted(cls, entries: Iterable[int]) -> Permutation:
        """Wrap entries already known to form a permutation (no validation)."""
        return tuple.__new__(cls, entries)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls.trusted(range(1, n + 1))

    @classmethod
    def decreasing(cls, n: int) -> Permutation:
        return cls.trusted(range(n, 0, -1))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse ``"6,7,4,3,5,2,8,1"``; a comma-free word such as ``"132"`` is
        read digit by digit."""
        text = text.strip()
        if not text:
            return cls(())
        if "," in text:
            return cls(int(tok) for tok in text.split(","))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(int(ch) for ch in text)

    @property
    def n(self) -> int:
        return len(self)

    def word(self) -> str:
        """Compact digit word (``"132"``) when every entry is a single digit."""
        if len(self) <= 9:
            return "".join(map(str, self))
        return str(self)

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, v in enumerate(self, 1):
            inv[v - 1] = i
        return Permutation.trusted(inv)

    def complement(self) -> Permutation:
        m = len(self) + 1
        return Permutation.trusted(m - v for v in self)

    def reverse(self) -> Permutation:
        return Permutation.trusted(reversed(self))

    def hat(self) -> Permutation:
        # reflection of the cross array in the secondary diagonal
        m = len(self) + 1
        inv = self.inverse()
        return Permutation.trusted(m - inv[m - 1 - i] for i in range(1, m))

    def is_involution(self) -> bool:
        return all(self[v - 1] == i for i, v in enumerate(self, 1))


@dataclass(frozen=True)
class StatRecord:
    fp: int
    exc: int
    des: int
    is_involution: bool

    def as_dict(self) -> dict:
        return {"fp": self.fp, "exc": self.exc, "des": self.des, "involution": self.is_involution}


def statistics(perm: Sequence[int]) -> StatRecord:
    fp = exc = des = 0
    for i, v in enumerate(perm, 1):
        if v == i:
            fp += 1
        elif v > i:
            exc += 1
    for a, b in zip(perm, perm[1:]):
        if a > b:
            des += 1
    invol = all(perm[v - 1] == i for i, v in enumerate(perm, 1))
    return StatRecord(fp, exc, des, invol)


def fixed_points(perm: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(perm, 1) if v == i)


def excedances(perm: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(perm, 1) if v > i)


def descents(perm: Sequence[int]) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)


def transform(perm: Sequence[int], kind: str) -> Permutation:
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    if kind == "complement":
        return p.complement()
    if kind == "hat":
        return p.hat()
    if kind == "inverse":
        return p.inverse()
    raise ValueError(f"unknown transform {kind!r}; expected one of {TRANSFORMS}")


class PatternSet(frozenset):
    """A nonempty set of patterns, serialized as ``"123/132"``."""

    __slots__ = ()

    def __new__(cls, patterns: Iterable[Sequence[int] | str]):
        items = []
        for pat in patterns:
            p = Permutation.parse(pat) if isinstance(pat, str) else Permutation(pat)
            if len(p) == 0:
                raise ValueError("patterns must have length at least 1")
            items.append(p)
        if not items:
            raise ValueError("a pattern set must contain at least one pattern")
        return frozenset.__new__(cls, items)

    @classmethod
    def parse(cls, text: str) -> PatternSet:
        return cls(tok for tok in text.strip().split("/") if tok)

    def sorted(self) -> list[Permutation]:
        return sorted(self, key=lambda p: (len(p), tuple(p)))

    def __str__(self) -> str:
        return "/".join(p.word() if len(p) <= 9 else str(p) for p in self.sorted())

    def __repr__(self) -> str:
        return f"PatternSet({str(self)!r})"

    def transformed(self, kind: str) -> PatternSet:
        return PatternSet(transform(p, kind) for p in self)


def as_pattern_set(sigma) -> PatternSet:
    if isinstance(sigma, PatternSet):
        return sigma
    if isinstance(sigma, str):
        return PatternSet.parse(sigma)
    return PatternSet(sigma)


class _Matcher:
    """Backtracking occurrence search for one pattern.

    Pattern positions are placed left to right; each candidate value is
    checked only against its nearest already-placed neighbours in value,
    which is enough to keep the partial choice order-isomorphic.
    """

    __slots__ = ("pattern", "m", "_bounds", "_tail_bounds")

    def __init__(self, pattern: Sequence[int]):
        p = tuple(pattern)
        self.pattern = p
        self.m = len(p)
        self._bounds = [self._nearest(p, range(t), t) for t in range(self.m)]
        last = self.m - 1
        self._tail_bounds = [self._nearest(p, [last, *range(t)], t) for t in range(last)]

    @staticmethod
    def _nearest(p, placed, t):
        lo = hi = None
        for s in placed:
            if p[s] < p[t] and (lo is None or p[s] > p[lo]):
                lo = s
            elif p[s] > p[t] and (hi is None or p[s] < p[hi]):
                hi = s
        return lo, hi

    def _search(self, seq, bounds, t, start, stop, vals, goal) -> bool:
        if t == goal:
            return True
        lo, hi = bounds[t]
        low = vals[lo] if lo is not None else 0
        high = vals[hi] if hi is not None else 1 << 30
        for idx in range(start, stop - (goal - t) + 1):
            v = seq[idx]
            if low < v < high:
                vals[t] = v
                if self._search(seq, bounds, t + 1, idx + 1, stop, vals, goal):
                    return True
        return False

    def occurs_in(self, seq: Sequence[int]) -> bool:
        n = len(seq)
        if self.m > n:
            return False
        return self._search(seq, self._bounds, 0, 0, n, [0] * self.m, self.m)

    def occurs_ending_at_last(self, seq: Sequence[int]) -> bool:
        """True iff some occurrence uses the final entry of ``seq``."""
        n = len(seq)
        if self.m > n:
            return False
        vals = [0] * self.m
        vals[self.m - 1] = seq[-1]
        return self._search(seq, self._tail_bounds, 0, 0, n - 1, vals, self.m - 1)


def contains(perm: Sequence[int], pattern: Sequence[int]) -> bool:
    if len(pattern) < 1:
        raise ValueError("pattern must have length at least 1")
    return _Matcher(pattern).occurs_in(perm)


def avoids(perm: Sequence[int], sigma) -> bool:
    return not any(contains(perm, p) for p in as_pattern_set(sigma))


def _grow(prefix: tuple, n_max: int, matchers: list[_Matcher]) -> Iterator[tuple]:
    # Children of a standardized prefix p: append a new last entry j and shift
    # the entries >= j up by one.  Only occurrences through the new entry can
    # appear, and a prefix containing a pattern is never extended.
    yield prefix
    k = len(prefix)
    if k == n_max:
        return
    for j in range(1, k + 2):
        child = tuple([v + 1 if v >= j else v for v in prefix] + [j])
        if any(mt.occurs_ending_at_last(child) for mt in matchers):
            continue
        yield from _grow(child, n_max, matchers)


def avoiders_by_length(n_max: int, sigma, ceiling: int | None = None) -> list[list[Permutation]]:
    """All of S_0(sigma), ..., S_{n_max}(sigma) from one pruned traversal."""
    check_ceiling(n_max, ceiling)
    matchers = [_Matcher(p) for p in as_pattern_set(sigma).sorted()]
    levels: list[list[Permutation]] = [[] for _ in range(n_max + 1)]
    for perm in _grow((), n_max, matchers):
        levels[len(perm)].append(Permutation.trusted(perm))
    for level in levels:
        level.sort()
    return levels


def enumerate_avoiders(
    n: int, sigma, involutions_only: bool = False, ceiling: int | None = None
) -> Iterator[Permutation]:
    """Yield each permutation of length ``n`` avoiding every pattern in ``sigma``.

    Generation is depth first over prefixes (up to order isomorphism), so a
    prefix that already contains a pattern is never extended.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    check_ceiling(n, ceiling)
    matchers = [_Matcher(p) for p in as_pattern_set(sigma).sorted()]
    for perm in _grow((), n, matchers):
        if len(perm) != n:
            continue
        if involutions_only and not all(perm[v - 1] == i for i, v in enumerate(perm, 1)):
            continue
        yield Permutation.trusted(perm)


def longest_increasing(perm: Sequence[int]) -> int:
    best = [1] * len(perm)
    for j in range(len(perm)):
        for i in range(j):
            if perm[i] < perm[j] and best[i] + 1 > best[j]:
                best[j] = best[i] + 1
    return max(best, default=0)


def longest_decreasing(perm: Sequence[int]) -> int:
    return longest_increasing([-v for v in perm])
