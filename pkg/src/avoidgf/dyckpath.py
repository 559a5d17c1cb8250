"""Dyck paths as U/D words, tunnels, and the shape statistics used to read
off fixed points and excedances."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .permcore import CeilingExceeded

DEFAULT_DYCK_CEILING = 14


class DyckWordError(ValueError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class DyckPath:
    word: str

    def __post_init__(self):
        height = 0
        for i, step in enumerate(self.word):
            if step == "U":
                height += 1
            elif step == "D":
                height -= 1
                if height < 0:
                    raise DyckWordError(f"prefix ending at index {i} dips below the axis", i)
            else:
                raise DyckWordError(f"invalid step {step!r} at index {i}", i)
        if height != 0:
            raise DyckWordError(f"word ends at height {height}, not 0", len(self.word))

    @property
    def semilength(self) -> int:
        return len(self.word) // 2

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return self.word

    def heights(self) -> list[int]:
        """y-coordinates of the 2n+1 lattice points of the path."""
        ys = [0]
        for step in self.word:
            ys.append(ys[-1] + (1 if step == "U" else -1))
        return ys

    def has_middle_peak(self) -> bool:
        n = self.semilength
        return n > 0 and self.word[n - 1:n + 1] == "UD"


def from_word(word) -> DyckPath:
    if not isinstance(word, str):
        word = "".join(word)
    return DyckPath(word.strip().upper())


def pyramid(k: int) -> DyckPath:
    return DyckPath("U" * k + "D" * k)


@dataclass(frozen=True)
class Tunnel:
    up_index: int
    down_index: int
    height: int

    @property
    def length(self) -> int:
        return self.down_index - self.up_index + 1

    @property
    def depth(self) -> int:
        return self.length // 2 - self.height - 1

    @property
    def doubled_midpoint(self) -> int:
        # the tunnel spans x = up_index .. down_index + 1
        return self.up_index + self.down_index + 1


@dataclass(frozen=True)
class TunnelStats:
    ct: int
    rt: int
    td0: int
    tdneg: int


@dataclass(frozen=True)
class ShapeStats:
    height: int
    peaks: int
    hills: int
    valleys: int
    height_at_middle: int
    is_symmetric: bool
    is_pyramid_sequence: bool
    ascents_only_at_start: bool


def tunnels(d: DyckPath) -> list[Tunnel]:
    """One tunnel per up-step, matched to its down-step by balance counting."""
    out = []
    open_steps: list[tuple[int, int]] = []
    height = 0
    for i, step in enumerate(d.word):
        if step == "U":
            open_steps.append((i, height))
            height += 1
        else:
            height -= 1
            j, h = open_steps.pop()
            out.append(Tunnel(j, i, h))
    out.sort(key=lambda t: t.up_index)
    return out


def tunnel_stats(d: DyckPath) -> TunnelStats:
    two_n = len(d.word)
    ct = rt = td0 = tdneg = 0
    for t in tunnels(d):
        mid = t.doubled_midpoint
        if mid == two_n:
            ct += 1
        elif mid > two_n:
            rt += 1
        depth = t.depth
        if depth == 0:
            td0 += 1
        elif depth < 0:
            tdneg += 1
    return TunnelStats(ct, rt, td0, tdneg)


def reflect(d: DyckPath) -> DyckPath:
    swap = {"U": "D", "D": "U"}
    return DyckPath("".join(swap[s] for s in reversed(d.word)))


def shape_stats(d: DyckPath) -> ShapeStats:
    w = d.word
    n = d.semilength
    height = peaks = hills = valleys = 0
    y = 0
    mid = 0
    pyramid_seq = True
    seen_down = False
    ascents_at_start = True
    for i, step in enumerate(w):
        if step == "U":
            if i > 0 and w[i - 1] == "D":
                valleys += 1
                if y != 0:
                    pyramid_seq = False
            if seen_down and i > 0 and w[i - 1] == "U":
                ascents_at_start = False
            y += 1
            height = max(height, y)
            if i + 1 < len(w) and w[i + 1] == "D":
                peaks += 1
                if y == 1:
                    hills += 1
        else:
            seen_down = True
            y -= 1
        if i + 1 == n:
            mid = y
    return ShapeStats(
        height=height,
        peaks=peaks,
        hills=hills,
        valleys=valleys,
        height_at_middle=mid,
        is_symmetric=reflect(d) == d,
        is_pyramid_sequence=pyramid_seq,
        ascents_only_at_start=ascents_at_start,
    )


def enumerate_dyck(
    n: int,
    *,
    max_height: int | None = None,
    max_peaks: int | None = None,
    symmetric: bool = False,
    pyramid_sequence: bool = False,
    ascents_only_at_start: bool = False,
    ceiling: int = DEFAULT_DYCK_CEILING,
) -> Iterator[DyckPath]:
    """Yield each Dyck path of semilength ``n`` meeting every given constraint.

    Constraints are enforced while the word is being built; symmetric paths
    are produced by mirroring their first half.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ceiling:
        raise CeilingExceeded(f"refusing to enumerate Dyck paths of semilength {n}: ceiling is {ceiling}")
    cap = n if max_height is None else max_height
    peak_cap = n if max_peaks is None else max_peaks
    total = n if symmetric else 2 * n
    buf: list[str] = []

    def rec(y: int, peaks: int, seen_down: bool) -> Iterator[str]:
        i = len(buf)
        if i == total:
            if symmetric or y == 0:
                yield "".join(buf)
            return
        last = buf[-1] if buf else ""
        # up-step
        if y < cap and y + 1 <= 2 * n - i - 1:
            ok = True
            if pyramid_sequence and last == "D" and y != 0:
                ok = False
            if ascents_only_at_start and seen_down and last == "U":
                ok = False
            if ok:
                buf.append("U")
                yield from rec(y + 1, peaks, seen_down)
                buf.pop()
        # down-step
        if y > 0:
            new_peaks = peaks + (last == "U")
            if new_peaks <= peak_cap:
                buf.append("D")
                yield from rec(y - 1, new_peaks, True)
                buf.pop()

    if n == 0:
        yield DyckPath("")
        return
    swap = {"U": "D", "D": "U"}
    for half in rec(0, 0, False):
        if not symmetric:
            yield DyckPath(half)
            continue
        path = DyckPath(half + "".join(swap[s] for s in reversed(half)))
        if max_peaks is not None or pyramid_sequence or ascents_only_at_start:
            st = shape_stats(path)
            if st.peaks > peak_cap:
                continue
            if pyramid_sequence and not st.is_pyramid_sequence:
                continue
            if ascents_only_at_start and not st.ascents_only_at_start:
                continue
        yield path
