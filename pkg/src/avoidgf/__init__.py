"""Pattern-avoiding permutations refined by fixed points and excedances:
enumeration, Dyck path bijections, exact generating-function expansions and
a brute-force oracle tying them together."""
from __future__ import annotations

from .permcore import PatternSet, Permutation, avoids, contains, enumerate_avoiders, statistics
from .series import Series, StatPoly

__version__ = "0.1.0"

__all__ = [
    "PatternSet",
    "Permutation",
    "Series",
    "StatPoly",
    "avoids",
    "contains",
    "enumerate_avoiders",
    "statistics",
]
