"""The two permutation-to-Dyck-path bijections.

``kra`` sends a 132-avoiding permutation to the border of its diagram (the
cells not shaded by the rays going south and east from each cross), read from
the lower-left to the upper-right corner of the array.  ``brs`` sends a
123-avoiding permutation to the corner-hugging path from the upper-right to the
lower-left corner that keeps every cross on its left.

Rows are numbered 1..n from the top and the cross of row ``i`` sits in column
``perm[i-1]``.
"""
from __future__ import annotations

from typing import Sequence

from .dyckpath import DyckPath
from .permcore import Permutation, contains


class DomainError(ValueError):
    """The input lies outside the domain of a bijection."""


def _cross_array(perm: Sequence[int]) -> list[list[bool]]:
    n = len(perm)
    grid = [[False] * (n + 1) for _ in range(n + 1)]
    for row, col in enumerate(perm, 1):
        grid[row][col] = True
    return grid


def diagram_rows(perm: Sequence[int]) -> list[int]:
    """Row lengths (top to bottom) of the unshaded region of the array."""
    n = len(perm)
    grid = _cross_array(perm)
    shaded = [[False] * (n + 1) for _ in range(n + 1)]
    for row in range(1, n + 1):
        for col in range(1, n + 1):
            if grid[row][col]:
                for c in range(col, n + 1):
                    shaded[row][c] = True
                for r in range(row, n + 1):
                    shaded[r][col] = True
    rows = []
    for row in range(1, n + 1):
        length = 0
        while length < n and not shaded[row][length + 1]:
            length += 1
        rows.append(length)
    return rows


def kra(perm: Sequence[int], trusted: bool = False) -> DyckPath:
    if not trusted and contains(perm, (1, 3, 2)):
        raise DomainError(f"{','.join(map(str, perm))} contains 132")
    n = len(perm)
    rows = diagram_rows(perm)
    steps = []
    x = 0
    for length in reversed(rows):  # bottom row first
        steps.append("D" * (length - x))
        steps.append("U")
        x = length
    steps.append("D" * (n - x))
    return DyckPath("".join(steps))


def _row_offsets(d: DyckPath) -> list[int]:
    """x-coordinate of each vertical step of the path, bottom row first."""
    x = 0
    offsets = []
    for step in d.word:
        if step == "U":
            offsets.append(x)
        else:
            x += 1
    return offsets


def kra_inv(d: DyckPath) -> Permutation:
    n = d.semilength
    left_of_path = list(reversed(_row_offsets(d)))  # top row first
    used = [False] * (n + 1)
    perm = []
    for length in left_of_path:
        col = length + 1
        while used[col]:
            col += 1
        used[col] = True
        perm.append(col)
    return Permutation(perm)


def brs(perm: Sequence[int], trusted: bool = False) -> DyckPath:
    if not trusted and contains(perm, (1, 2, 3)):
        raise DomainError(f"{','.join(map(str, perm))} contains 123")
    n = len(perm)
    grid = _cross_array(perm)
    steps = []
    x = n
    for row in range(1, n + 1):
        # go left while column x holds no cross in this row or below it
        while x > 0 and not any(grid[r][x] for r in range(row, n + 1)):
            steps.append("D")
            x -= 1
        steps.append("U")
    steps.append("D" * x)
    return DyckPath("".join(steps))


def brs_inv(d: DyckPath) -> Permutation:
    """Rows where the path turns left carry their cross right against the
    path; the remaining rows take the leftover columns in decreasing order."""
    n = d.semilength
    right_of_path = []  # x-coordinate of the vertical step in each row, top first
    x = n
    for step in d.word:
        if step == "U":
            right_of_path.append(x)
        else:
            x -= 1
    perm = [0] * n
    taken = set()
    for row in range(n):
        below = right_of_path[row + 1] if row + 1 < n else 0
        if right_of_path[row] > below:
            perm[row] = right_of_path[row]
            taken.add(perm[row])
    rest = iter(sorted(set(range(1, n + 1)) - taken, reverse=True))
    for row in range(n):
        if perm[row] == 0:
            perm[row] = next(rest)
    return Permutation(perm)


def satisfies_c1(d: DyckPath) -> bool:
    """Some i has its i-th and (i+1)-st up-steps adjacent, its i-th and
    (i+1)-st down-steps from the end adjacent, and exactly n+1-2i peaks
    strictly between the two pairs."""
    w = d.word
    n = d.semilength
    ups = [i for i, s in enumerate(w) if s == "U"]
    downs_from_end = [i for i in range(len(w) - 1, -1, -1) if w[i] == "D"]
    for i in range(1, n):
        a, b = ups[i - 1], ups[i]
        c, e = downs_from_end[i - 1], downs_from_end[i]
        if b != a + 1 or e != c - 1:
            continue
        peaks = sum(1 for j in range(b, e) if w[j] == "U" and w[j + 1] == "D")
        if peaks == n + 1 - 2 * i:
            return True
    return False
