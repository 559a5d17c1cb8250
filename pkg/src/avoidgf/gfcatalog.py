"""Catalog of generating functions for permutations avoiding patterns of
length 3, refined by fixed points (x), excedances (q) and optionally
descents (p).

Each entry has a stable id such as ``pair.b'`` or ``triple.e`` and knows
which pattern sets it describes, so the oracle can check it against
enumeration.  Ids use the usual class letters; a trailing prime may also be
written as ``p`` (``pair.bp``), and ``pair.132_213`` style ids resolve
through the pattern sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .permcore import PatternSet
from .sequences import (
    catalan,
    catalan_bounded,
    g_chebyshev,
    involution_counts,
    s123_distribution,
)
from .series import (
    DEFAULT_ORDER,
    ONE,
    Q,
    X,
    Series,
    StatPoly,
    CFSpec,
    cf_to_series,
    gens,
    halve,
    invert_transform,
    series_div,
    series_from_text,
    series_sqrt,
)

KINDS = ("rational", "cf", "sqrt_closed_form", "recursive_family", "explicit_formula")
MAX_FAMILY_PARAM = 6

# How an entry's coefficients relate to permutation statistics.
#   fpexc     x^fp q^exc
#   fp        x^fp (q set to 1)
#   fpexcdes  x^fp q^exc p^des
#   fpexcdes1 x^fp q^exc p^(des+1) for n >= 1
#   inv       x^fp over involutions
STAT_MODES = ("fpexc", "fp", "fpexcdes", "fpexcdes1", "inv")


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    anchor: str
    stats: str
    builder: Callable[[int, int | None], Series] = field(repr=False, compare=False)
    patterns: tuple = ()
    pattern_rule: Callable[[int], tuple] | None = field(default=None, repr=False, compare=False)
    parametric: bool = False
    default_params: tuple = ()
    variables: str = "x,q,z"
    aliases: tuple = ()

    @property
    def involutions(self) -> bool:
        return self.stats == "inv"

    def pattern_sets(self, param: int | None = None) -> list[PatternSet]:
        if self.parametric:
            if param is None:
                raise ValueError(f"{self.id} needs a parameter k")
            return [PatternSet.parse(s) for s in self.pattern_rule(param)]
        return [PatternSet.parse(s) for s in self.patterns]

    def expand(self, order: int = DEFAULT_ORDER, param: int | None = None) -> Series:
        if self.parametric:
            if param is None:
                raise ValueError(f"{self.id} needs a parameter k")
            if not 0 <= param <= MAX_FAMILY_PARAM:
                raise ValueError(f"parameter k={param} outside 0..{MAX_FAMILY_PARAM}")
        elif param is not None:
            raise ValueError(f"{self.id} takes no parameter")
        return self.builder(order, param)

    def describe(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "anchor": self.anchor,
            "variables": self.variables,
            "stats": self.stats,
            "patterns": list(self.patterns) if not self.parametric else "k-dependent",
            "parametric": self.parametric,
            "aliases": list(self.aliases),
        }


# ---------------------------------------------------------------------------
# Displayed rational generating functions, transcribed as printed.

PAIR_FORMULAS = {
    "a": (("123/132", "123/213"),
          "(1+xz+(x^2-4q)z^2+(-3xq+q+q^2)z^3+(xq+xq^2-3x^2q+3q^2)z^4)/((1-qz^2)(1-4qz^2))"),
    "b": (("231/321",), "(1-z)/(1-(x+1)z+(x-q)z^2)"),
    "b'": (("312/321",), "(1-qz)/(1-(x+q)z+(x-1)qz^2)"),
    "c": (("132/213",),
          "(1-(1+q)z-2qz^2+4q(1+q)z^3-(xq^2+xq+5q^2)z^4+2xq^2z^5)/((1-z)(1-xz)(1-qz)(1-4qz^2))"),
    "d": (("231/312",), "(1-qz^2)/(1-xz-2qz^2)"),
    "e": (("132/231", "213/231"), "(1-z-qz^2+xqz^3)/((1-xz)(1-z-2qz^2))"),
    "e'": (("132/312", "213/312"), "(1-qz-qz^2+xqz^3)/((1-xz)(1-qz-2qz^2))"),
    "f": (("132/321", "213/321"), "(1-(1+q)z+2qz^2)/((1-z)(1-xz)(1-qz))"),
    "g": (("123/231",),
          "(1+xz+(x^2-2q)z^2+(-x^2q+xq+3q^2)z^4+3q^2z^5-q^3z^6-4q^3z^7-2xq^3z^8)/((1-qz^2)^3(1-qz^3))"),
    "g'": (("123/312",),
           "(1+xz+(x^2-2q)z^2+(-x^2q+xq^2+3q^2)z^4+3q^3z^5-q^3z^6-4q^4z^7-2xq^4z^8)/((1-qz^2)^3(1-q^2z^3))"),
    "h": (("123/321",), "1+xz+(x^2+q)z^2+(2xq+q^2+q)z^3+4q^2z^4"),
}

TRIPLE_FORMULAS = {
    "a": (("123/132/213",),
          "(1+xz+(x^2-q)z^2+(-xq+q^2+q)z^3-x^2qz^4)/((1+qz^2)(1-3qz^2+q^2z^4))"),
    "b": (("231/312/321",), "1/(1-xz-qz^2)"),
    "c": (("123/132/231", "123/213/231"),
          "(1+xz+(x^2-q)z^2+qz^3+(-x^2q+xq+q^2)z^4)/(1-qz^2)^2"),
    "c'": (("123/132/312", "123/213/312"),
           "(1+xz+(x^2-q)z^2+q^2z^3+(-x^2q+xq^2+q^2)z^4)/(1-qz^2)^2"),
    "d": (("132/231/321", "213/231/321"), "(1-z+qz^2)/((1-z)(1-xz))"),
    "d'": (("132/312/321", "213/312/321"), "(1-qz+qz^2)/((1-xz)(1-qz))"),
    "e": (("132/213/231",),
          "(1-z-qz^2+2qz^3+(-x^2q+q^2-xq)z^4+(x^2q-2q^2)z^5+xq^2z^6)/((1-z)(1-xz)(1-qz^2)^2)"),
    "e'": (("132/213/312",),
           "(1-qz-qz^2+2q^2z^3+(-x^2q-xq^2+q^2)z^4+(x^2q^2-2q^3)z^5+xq^3z^6)/((1-xz)(1-qz)(1-qz^2)^2)"),
    "f": (("132/231/312", "213/231/312"), "(1+xqz^3)/((1-xz)(1-qz^2))"),
    "g": (("123/231/312",), "(1+xz+(x^2-q)z^2+xqz^3+q^2z^4)/(1-qz^2)^2"),
    "h": (("132/213/321",), "(1-(1+q)z+2qz^2-xqz^3)/((1-z)(1-xz)(1-qz))"),
    "i": (("123/132/321", "123/213/321"), "1+xz+(x^2+q)z^2+(xq+q^2+q)z^3+q^2z^4"),
    "j": (("123/231/321",), "1+xz+(x^2+q)z^2+(2xq+q)z^3+q^2z^4"),
    "j'": (("123/312/321",), "1+xz+(x^2+q)z^2+(2xq+q^2)z^3+q^2z^4"),
}

INVOLUTION_PAIR_FORMULAS = {
    "a": (("123/132", "123/213"), "(1+xz+(x^2-1)z^2)/(1-2z^2)"),
    "b": (("231/321", "312/321"), "1/(1-xz-z^2)"),
    "c": (("132/213",), "(1-z^2)/((1-xz)(1-2z^2))"),
    "d": (("231/312",), "(1-z^2)/(1-xz-2z^2)"),
    "e": (("132/231", "213/231", "132/312", "213/312"), "(1+xz^3)/((1-xz)(1-z^2))"),
    "f": (("132/321", "213/321"), "1/((1-xz)(1-z^2))"),
    "g": (("123/231", "123/312"), "(1+xz+(x^2-1)z^2+xz^3+z^4)/(1-z^2)^2"),
    "h": (("123/321",), "1+xz+(x^2+1)z^2+2xz^3+2z^4"),
}

# Formulas printed as worked examples of the families.
PRINTED = {
    "M_1": "(1+xz)/(1-z^2)",
    "M_2": "(1+xz+(x^2-4)z^2+(2-3x)z^3+(3+2x-3x^2)z^4)/((1-z^2)(1-4z^2))",
    "M_3": "(1+xz+(x^2-12)z^2+(x^3-11x+2)z^3+(-10x^2+4x+45)z^4+(-10x^3+4x^2+37x-10)z^5"
           "+(25x^2-22x-52)z^6+(25x^3-22x^2-41x+16)z^7+(-12x^2+16x+16)z^8"
           "+(-12x^3+16x^2+12x-8)z^9)/((1-z^2)^2(1-4z^2)(1-7z^2+z^4))",
    "F_312_4321": "(1-2qz+(q^2-xq)z^2+(xq^2-q^2)z^3)/"
                  "(1-(x+2q)z+(xq+q^2-q)z^2+(x^2q-xq)z^3+(-x^2q^2+2xq^2-q^2)z^4)",
}

SQRT_132 = "2/(1+z(1+q-2x)+sqrt(1-2z(1+q)+z^2(1-q)^2))"
SQRT_321_DES = "2/(1+z(1+q-2x)+sqrt(1-2z(1+q)+z^2((1+q)^2-4qp)))"
SQRT_132_DES = ("2(1+xz(p-1))/(1+(1+q-2x)z-qz^2(p-1)^2+sqrt(f_1)), f_1 = 1-2(1+q)z"
                "+[(1-q)^2-2q(p-1)(p+3)]z^2-2q(1+q)(p-1)^2z^3+q^2(p-1)^4z^4")
CF_312 = "1/(1-zK_0-z/(1-zK_1-z/(1-zK_2-...))), K_n=(x-1)C_n q^n z^n+(q-1)C_{<n}(qz)"
CF_231 = "1/(1-zK'_0-qz/(1-zK'_1-qz/(1-zK'_2-...))), K'_n=(x-q)C_n z^n+(1-q)C_{<n}(z)"


def _rational_builder(text: str):
    def build(order: int, param=None) -> Series:
        return series_from_text(text, order)
    return build


# ---------------------------------------------------------------------------
# Square-root closed forms.

def _half_reciprocal(den: Series, num: Series | None = None) -> Series:
    """num / (den / 2) where den has constant term 2."""
    half = halve(den)
    one = Series.one(den.order)
    return series_div(one if num is None else num, half)


def sqrt_132(order: int, param=None) -> Series:
    x, q, _, z = gens(order)
    disc = 1 - z * 2 * (1 + q) + z * z * (1 - q) * (1 - q)
    return _half_reciprocal(1 + z * (1 + q - x * 2) + series_sqrt(disc))


def sqrt_321_descents(order: int, param=None) -> Series:
    x, q, p, z = gens(order)
    disc = 1 - z * 2 * (1 + q) + z * z * ((1 + q) * (1 + q) - q * p * 4)
    return _half_reciprocal(1 + z * (1 + q - x * 2) + series_sqrt(disc))


def _f1(order: int) -> Series:
    x, q, p, z = gens(order)
    pm = p - 1
    return (
        1
        - z * 2 * (1 + q)
        + z ** 2 * ((1 - q) * (1 - q) - q * pm * (p + 3) * 2)
        - z ** 3 * q * (1 + q) * pm * pm * 2
        + z ** 4 * q * q * pm ** 4
    )


def sqrt_132_descents(order: int, param=None) -> Series:
    """1 + sum over n >= 1 of x^fp q^exc p^(des+1) z^n for 132-avoiders."""
    x, q, p, z = gens(order)
    pm = p - 1
    den = 1 + (1 + q - x * 2) * z - q * z * z * pm * pm + series_sqrt(_f1(order))
    return _half_reciprocal(den, 1 + x * z * pm)


@lru_cache(maxsize=None)
def family_descent_p(order: int = DEFAULT_ORDER) -> Series:
    """sum_{k=0..order} F_{132,(k+1)k...1} p^k, i.e. H/(1-p) with p-degrees above ``order`` dropped."""
    h = sqrt_132_descents(order)
    out = []
    for poly in h.coeffs:
        terms: dict = {}
        for (a, b, c), coef in poly.items():
            for k in range(c, order + 1):
                terms[(a, b, k)] = terms.get((a, b, k), 0) + coef
        out.append(StatPoly(terms))
    return Series(out)


def descent_p_coefficient(k: int, order: int = DEFAULT_ORDER) -> Series:
    """F_{132,(k+1)k...1} read off as the p^k coefficient of the descent sum."""
    full = family_descent_p(max(order, k))
    out = []
    for poly in full.coeffs[: order + 1]:
        out.append(StatPoly({(a, b, 0): c for (a, b, cp), c in poly.items() if cp == k}))
    return Series(out, order)


# ---------------------------------------------------------------------------
# Continued fractions.

def _truncated_catalan(i: int, order: int, scale_q: bool, bound: int | None = None) -> Series:
    """C_{<i}(qz) (or C_{<i}(z)); with ``bound`` the height-bounded version."""
    coeffs = []
    for j in range(min(i, order + 1)):
        c = catalan(j) if bound is None else catalan_bounded(j, bound)
        coeffs.append(StatPoly.monomial(0, j if scale_q else 0, 0, c))
    return Series(coeffs, order)


def k_level_312(n: int, order: int) -> Series:
    x, q, _, z = gens(order)
    qz_n = Series.z(order, n, StatPoly.monomial(0, n, 0, catalan(n)))
    return (x - 1) * qz_n + (q - 1) * _truncated_catalan(n, order, True)


def k_level_231(n: int, order: int) -> Series:
    x, q, _, z = gens(order)
    z_n = Series.z(order, n, catalan(n))
    return (x - q) * z_n + (1 - q) * _truncated_catalan(n, order, False)


CF_SPEC_312 = CFSpec(level=k_level_312, link=lambda order: Series.z(order), sign=-1)
CF_SPEC_231 = CFSpec(level=k_level_231, link=lambda order: Series.z(order, 1, Q), sign=-1)


def cf_312(order: int, param=None, depth: int | None = None) -> Series:
    return cf_to_series(CF_SPEC_312, order, depth)


def cf_231(order: int, param=None, depth: int | None = None) -> Series:
    return cf_to_series(CF_SPEC_231, order, depth)


# ---------------------------------------------------------------------------
# Recursive families.

def g_series(k: int, ell: int, order: int) -> Series:
    """G_{k,l}(z) = sum_n g_{k,l}(n)^2 z^n."""
    return Series([StatPoly.const(g_chebyshev(k, ell, n) ** 2) for n in range(order + 1)], order)


@lru_cache(maxsize=None)
def family_M(k: int, order: int = DEFAULT_ORDER) -> Series:
    """M_k(x, z): fixed points over S_n(132, 12...(k+1))."""
    if k < 0:
        return Series.zero(order)
    x, _, _, z = gens(order)
    total = Series.zero(order)
    for ell in range(k + 1):
        inner = 1 + (x - 1) * z * family_M(ell - 1, order)
        total = total + g_series(k, ell, order) * inner
    return total


@lru_cache(maxsize=None)
def family_A(k: int, order: int = DEFAULT_ORDER) -> Series:
    """A_0^k = F_{312,(k+1)k...1}(x, q, z)."""
    x, q, _, z = gens(order)
    below = Series.one(order)  # A_k^k
    for i in reversed(range(k)):
        h = k - i - 1
        top = Series.z(order, i, StatPoly.monomial(0, i, 0, catalan_bounded(i, h)))
        bracket = (x - 1) * top + (q - 1) * _truncated_catalan(i, order, True, bound=h) + below
        below = series_div(Series.one(order), 1 - z * bracket)
    return below


def family_A231(k: int, order: int = DEFAULT_ORDER) -> Series:
    """F_{231,(k+1)k...1}, obtained from the 312 family by inversion."""
    return invert_transform(family_A(k, order))


# ---------------------------------------------------------------------------
# Explicit formulas.

def s2_123_series(order: int, param=None) -> Series:
    coeffs = [ONE]
    for n in range(1, order + 1):
        s0, s1, s2 = s123_distribution(n)
        coeffs.append(StatPoly({(0, 0, 0): s0, (1, 0, 0): s1, (2, 0, 0): s2}))
    return Series(coeffs, order)


def _involution_series(pattern: str):
    def build(order: int, param=None) -> Series:
        coeffs = []
        for n in range(order + 1):
            coeffs.append(StatPoly({(k, 0, 0): involution_counts(pattern, n, k) for k in range(n + 1)}))
        return Series(coeffs, order)
    return build


def _decreasing(k: int) -> str:
    return "".join(str(v) for v in range(k + 1, 0, -1)) if k + 1 <= 9 else ",".join(
        str(v) for v in range(k + 1, 0, -1))


def _increasing(k: int) -> str:
    return "".join(str(v) for v in range(1, k + 2))


# ---------------------------------------------------------------------------
# The registry.

def _build_registry() -> dict[str, CatalogEntry]:
    entries: list[CatalogEntry] = []
    for letter, (pats, text) in PAIR_FORMULAS.items():
        entries.append(CatalogEntry(f"pair.{letter}", "rational", text, "fpexc",
                                    _rational_builder(text), pats))
    for letter, (pats, text) in TRIPLE_FORMULAS.items():
        entries.append(CatalogEntry(f"triple.{letter}", "rational", text, "fpexc",
                                    _rational_builder(text), pats))
    for letter, (pats, text) in INVOLUTION_PAIR_FORMULAS.items():
        entries.append(CatalogEntry(f"inv.pair.{letter}", "rational", text, "inv",
                                    _rational_builder(text), pats, variables="x,z"))
    entries += [
        CatalogEntry("single.132.sqrt", "sqrt_closed_form", SQRT_132, "fpexc", sqrt_132,
                     ("132", "213", "321")),
        CatalogEntry("single.321.descents", "sqrt_closed_form", SQRT_321_DES, "fpexcdes",
                     sqrt_321_descents, ("321",), variables="x,q,p,z"),
        CatalogEntry("single.132.descents", "sqrt_closed_form", SQRT_132_DES, "fpexcdes1",
                     sqrt_132_descents, ("132", "213"), variables="x,q,p,z"),
        CatalogEntry("single.312.cf", "cf", CF_312, "fpexc", cf_312, ("312",)),
        CatalogEntry("single.231.cf", "cf", CF_231, "fpexc", cf_231, ("231",)),
        CatalogEntry("formula.s2_123", "explicit_formula",
                     "s_n^0 + s_n^1 x + s_n^2 x^2 from the double sum for s_n^2", "fp",
                     s2_123_series, ("123",), variables="x,z"),
        CatalogEntry("inv.single.123", "explicit_formula",
                     "i_n^0 = i_n^2 = C(n-1, n/2) (n even), i_n^1 = C(n, (n-1)/2) (n odd)", "inv",
                     _involution_series("123"), ("123",), variables="x,z"),
        CatalogEntry("inv.single.132", "explicit_formula",
                     "i_n^k = (k+1)/(n+1) C(n+1, (n-k)/2)", "inv",
                     _involution_series("132"), ("132", "213", "321"), variables="x,z"),
        CatalogEntry("inv.single.231", "rational", "(1-z^2)/(1-xz-2z^2)", "inv",
                     _rational_builder("(1-z^2)/(1-xz-2z^2)"), ("231", "312"), variables="x,z"),
        CatalogEntry("family.M_k", "recursive_family",
                     "M_k = sum_{l=0..k} G_{k,l}(z)(1+(x-1)z M_{l-1}), M_{-1} = 0", "fp",
                     lambda order, k: family_M(k, order), parametric=True,
                     pattern_rule=lambda k: (f"132/{_increasing(k)}",),
                     default_params=(0, 1, 2, 3, 4), variables="x,z"),
        CatalogEntry("family.A_k", "recursive_family",
                     "A_i^k = 1/(1-z[(x-1)C_i^{<=k-i-1}q^i z^i+(q-1)C_{<i}^{<=k-i-1}(qz)+A_{i+1}^k]), A_k^k = 1",
                     "fpexc", lambda order, k: family_A(k, order), parametric=True,
                     pattern_rule=lambda k: (f"312/{_decreasing(k)}",),
                     default_params=(0, 1, 2, 3, 4)),
        CatalogEntry("family.A231_k", "recursive_family",
                     "A_0^k(x/q, 1/q, qz)", "fpexc",
                     lambda order, k: family_A231(k, order), parametric=True,
                     pattern_rule=lambda k: (f"231/{_decreasing(k)}",),
                     default_params=(0, 1, 2, 3, 4)),
        CatalogEntry("family.descent_p", "recursive_family",
                     "sum_k F_{132,(k+1)k...1} p^k = 2(1+xz(p-1))/((1-p)[1+(1+q-2x)z-qz^2(p-1)^2+sqrt(f_1)])",
                     "fpexc", lambda order, k: descent_p_coefficient(k, order), parametric=True,
                     pattern_rule=lambda k: (f"132/{_decreasing(k)}", f"213/{_decreasing(k)}"),
                     default_params=(0, 1, 2, 3), variables="x,q,p,z"),
    ]
    return {e.id: e for e in entries}


REGISTRY: dict[str, CatalogEntry] = _build_registry()


def _pattern_index() -> dict[str, str]:
    index = {}
    for entry in REGISTRY.values():
        if entry.parametric or entry.stats not in ("fpexc", "inv"):
            continue
        prefix = "inv." if entry.involutions else ""
        for pats in entry.patterns:
            ps = PatternSet.parse(pats)
            size = {1: "single", 2: "pair", 3: "triple"}[len(ps)]
            key = prefix + size + "." + "_".join(p.word() for p in ps.sorted())
            index.setdefault(key, entry.id)
    return index


PATTERN_INDEX = _pattern_index()


def resolve_id(entry_id: str) -> str:
    if entry_id in REGISTRY:
        return entry_id
    if entry_id.endswith("p"):
        primed = entry_id[:-1] + "'"
        if primed in REGISTRY:
            return primed
    if entry_id in PATTERN_INDEX:
        return PATTERN_INDEX[entry_id]
    raise UnknownEntry(f"unknown catalog id {entry_id!r}")


def get_entry(entry_id: str) -> CatalogEntry:
    return REGISTRY[resolve_id(entry_id)]


def entry_for_patterns(sigma, involutions: bool = False) -> CatalogEntry:
    ps = PatternSet.parse(sigma) if isinstance(sigma, str) else PatternSet(sigma)
    for entry in REGISTRY.values():
        if entry.parametric or entry.involutions != involutions:
            continue
        if entry.stats not in ("fpexc", "inv"):
            continue
        if any(PatternSet.parse(p) == ps for p in entry.patterns):
            return entry
    raise UnknownEntry(f"no catalog entry for {ps}")


def expand(entry_id: str, order: int = DEFAULT_ORDER, param: int | None = None) -> Series:
    return get_entry(entry_id).expand(order, param)


def list_entries() -> list[dict]:
    return [REGISTRY[k].describe() for k in sorted(REGISTRY)]


# Pairs related by inversion (the primed partner of each class).
INVERSE_PARTNERS = (
    ("pair.b", "pair.b'"),
    ("pair.c", "pair.c"),
    ("pair.e", "pair.e'"),
    ("pair.g", "pair.g'"),
    ("triple.c", "triple.c'"),
    ("triple.d", "triple.d'"),
    ("triple.e", "triple.e'"),
    ("triple.j", "triple.j'"),
)
