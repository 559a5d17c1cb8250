"""Exact truncated power series in z whose coefficients are integer
polynomials in the statistic markers x (fixed points), q (excedances) and
p (descents).

Everything is plain integer arithmetic; rationals only show up inside
:func:`series_sqrt` and when a caller halves a series, and are cleared with an
integrality check before leaving those helpers.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

DEFAULT_ORDER = 12
MAX_EXPONENT = 64

Exponent = tuple  # (a, b, c) for x^a q^b p^c
VARS = ("x", "q", "p")


class SeriesError(ValueError):
    pass


class StatPoly:
    """Polynomial in x, q, p with exact (normally integer) coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean = {}
        if terms:
            for exp, coef in terms.items():
                if coef:
                    if len(exp) != 3 or min(exp) < 0:
                        raise SeriesError(f"bad exponent {exp}")
                    if max(exp) > MAX_EXPONENT:
                        raise SeriesError(f"exponent {exp} exceeds the guard {MAX_EXPONENT}")
                    clean[tuple(exp)] = coef
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> StatPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 0, coef=1) -> StatPoly:
        return cls({(a, b, c): coef})

    @classmethod
    def var(cls, name: str) -> StatPoly:
        exp = [0, 0, 0]
        exp[VARS.index(name)] = 1
        return cls({tuple(exp): 1})

    @staticmethod
    def coerce(value) -> StatPoly:
        if isinstance(value, StatPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return StatPoly.const(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant(self):
        return self._terms.get((0, 0, 0), 0)

    def is_constant(self) -> bool:
        return all(exp == (0, 0, 0) for exp in self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = StatPoly.const(other)
        if not isinstance(other, StatPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> StatPoly:
        try:
            other = StatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exp, coef in other._terms.items():
            out[exp] = out.get(exp, 0) + coef
        return StatPoly(out)

    __radd__ = __add__

    def __neg__(self) -> StatPoly:
        return StatPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> StatPoly:
        try:
            other = StatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> StatPoly:
        return StatPoly.coerce(other) - self

    def __mul__(self, other) -> StatPoly:
        if isinstance(other, (int, Fraction)):
            return StatPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, StatPoly):
            return NotImplemented
        out: dict = {}
        for (a1, b1, c1), k1 in self._terms.items():
            for (a2, b2, c2), k2 in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0) + k1 * k2
        return StatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> StatPoly:
        out = StatPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, a: int = 0, b: int = 0, c: int = 0) -> StatPoly:
        return StatPoly({(e[0] + a, e[1] + b, e[2] + c): k for e, k in self._terms.items()})

    def specialize(self, x=None, q=None, p=None) -> StatPoly:
        """Substitute integers for some markers (``q=1`` marginalizes q)."""
        vals = (x, q, p)
        out: dict = {}
        for exp, coef in self._terms.items():
            new = list(exp)
            for i, v in enumerate(vals):
                if v is not None:
                    coef = coef * v ** exp[i]
                    new[i] = 0
            key = tuple(new)
            out[key] = out.get(key, 0) + coef
        return StatPoly(out)

    def total_degree(self, include_p: bool = False) -> int:
        if not self._terms:
            return 0
        return max(a + b + (c if include_p else 0) for a, b, c in self._terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self._terms.values())

    def to_integral(self) -> StatPoly:
        if not self.is_integral():
            raise SeriesError(f"non-integral coefficient in {self}")
        return StatPoly({e: int(c) for e, c in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b, c), coef in sorted(self._terms.items(), reverse=True):
            mono = "".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, (a, b, c)) if k
            )
            mag = abs(coef)
            sign = "-" if coef < 0 else "+"
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"StatPoly({str(self)!r})"


X = StatPoly.var("x")
Q = StatPoly.var("q")
P = StatPoly.var("p")
ONE = StatPoly.const(1)
ZERO = StatPoly()


class Series:
    """Power series in z truncated after degree ``order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [StatPoly.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise SeriesError("order must be nonnegative")
        cs = cs[: order + 1] + [ZERO] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> Series:
        return cls([ONE], order)

    @classmethod
    def z(cls, order: int, power: int = 1, coef=1) -> Series:
        coef = StatPoly.coerce(coef)
        if power > order:
            return cls.zero(order)
        return cls([ZERO] * power + [coef], order)

    @classmethod
    def const(cls, value, order: int) -> Series:
        return cls([StatPoly.coerce(value)], order)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, int], order: int) -> Series:
        """Build from ``{(a, b, c, n): coef}`` (x^a q^b p^c z^n)."""
        buckets: list[dict] = [{} for _ in range(order + 1)]
        for (a, b, c, n), coef in terms.items():
            if n <= order:
                key = (a, b, c)
                buckets[n][key] = buckets[n].get(key, 0) + coef
        return cls([StatPoly(t) for t in buckets], order)

    def _lift(self, other) -> Series:
        if isinstance(other, Series):
            if other.order != self.order:
                raise SeriesError(f"order mismatch: {self.order} vs {other.order}")
            return other
        return Series.const(other, self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Series:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series([-a for a in self.coeffs])

    def __sub__(self, other) -> Series:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return Series([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other) -> Series:
        return self._lift(other) - self

    def __mul__(self, other) -> Series:
        if isinstance(other, (int, Fraction, StatPoly)):
            return Series([c * other for c in self.coeffs])
        if not isinstance(other, Series):
            return NotImplemented
        other = self._lift(other)
        N = self.order
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i in range(N + 1) if a[i]]
        nz_b = [j for j in range(N + 1) if b[j]]
        out = [ZERO] * (N + 1)
        for i in nz_a:
            for j in nz_b:
                if i + j > N:
                    break
                out[i + j] = out[i + j] + a[i] * b[j]
        return Series(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Series:
        if k < 0:
            return series_div(Series.one(self.order), self) ** (-k)
        out = Series.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other) -> Series:
        if isinstance(other, (int, Fraction)):
            inv = 1 / Fraction(other)
            return Series([c * inv for c in self.coeffs])
        return series_div(self, self._lift(other))

    def __rtruediv__(self, other) -> Series:
        return series_div(self._lift(other), self)

    def shift(self, k: int) -> Series:
        """Multiply by z^k."""
        return Series([ZERO] * k + list(self.coeffs), self.order)

    def truncate(self, order: int) -> Series:
        return Series(self.coeffs, order)

    def map(self, fn: Callable[[int, StatPoly], StatPoly]) -> Series:
        return Series([fn(n, c) for n, c in enumerate(self.coeffs)])

    def specialize(self, x=None, q=None, p=None) -> Series:
        return Series([c.specialize(x, q, p) for c in self.coeffs])

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coeffs)

    def to_integral(self) -> Series:
        return Series([c.to_integral() for c in self.coeffs])

    def counts(self) -> list[int]:
        """Coefficient sums at x = q = p = 1."""
        return [c.specialize(1, 1, 1).constant() for c in self.coeffs]

    def to_json_obj(self) -> list:
        return [
            [
                {"x": a, "q": b, "p": c, "coef": str(coef)}
                for (a, b, c), coef in poly.items()
            ]
            for poly in self.coeffs
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: list) -> Series:
        polys = []
        for terms in obj:
            polys.append(StatPoly({(t["x"], t["q"], t["p"]): int(t["coef"]) for t in terms}))
        return cls(polys)

    def to_text(self) -> str:
        width = len(str(self.order))
        return "\n".join(f"z^{n:<{width}} : {c}" for n, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        nz = [f"({c})z^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"Series[{self.order}](" + " + ".join(nz) + ")"


def gens(order: int) -> tuple[Series, Series, Series, Series]:
    """The markers x, q, p and the length variable z as series of ``order``."""
    return (Series.const(X, order), Series.const(Q, order), Series.const(P, order), Series.z(order))


def series_arith(a: Series, b: Series, op: str) -> Series:
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def series_div(num: Series, den: Series) -> Series:
    if num.order != den.order:
        raise SeriesError(f"order mismatch: {num.order} vs {den.order}")
    c0 = den.coeffs[0]
    if not c0.is_constant() or c0.constant() not in (1, -1):
        raise SeriesError(f"denominator constant term {c0} is not a unit")
    unit = c0.constant()
    N = num.order
    d = den.coeffs
    nz = [k for k in range(1, N + 1) if d[k]]
    out: list[StatPoly] = []
    for n in range(N + 1):
        acc = num.coeffs[n]
        for k in nz:
            if k > n:
                break
            acc = acc - d[k] * out[n - k]
        out.append(acc if unit == 1 else -acc)
    return Series(out)


def halve(a: Series) -> Series:
    """a / 2, which must have integer coefficients."""
    out = Series([c * Fraction(1, 2) for c in a.coeffs])
    if not out.is_integral():
        raise SeriesError("series is not divisible by 2")
    return out.to_integral()


def series_sqrt(a: Series, integral: bool = True) -> Series:
    """The square root with constant term 1 of a series with constant term 1.

    Coefficients follow from s_0 = 1 and 2 s_n = a_n - sum_{0<k<n} s_k s_{n-k}.
    """
    if a.coeffs[0] != ONE:
        raise SeriesError(f"square root needs constant term 1, got {a.coeffs[0]}")
    N = a.order
    s: list[StatPoly] = [ONE]
    half = Fraction(1, 2)
    for n in range(1, N + 1):
        acc = a.coeffs[n]
        for k in range(1, n):
            if s[k] and s[n - k]:
                acc = acc - s[k] * s[n - k]
        s.append(acc * half)
    out = Series(s)
    if integral:
        if not out.is_integral():
            raise SeriesError("square root does not have integer coefficients")
        return out.to_integral()
    return out


@dataclass(frozen=True)
class CFSpec:
    """Continued fraction

        1 / (1 - z*K_0 + sign*L / (1 - z*K_1 + sign*L / (1 - z*K_2 + ...)))

    ``level(n, order)`` returns K_n, ``link(order)`` the inter-level
    numerator L (which must be divisible by z), and ``tail(order)`` the value
    that replaces the part of the fraction below the deepest level kept.
    """

    level: Callable[[int, int], Series]
    link: Callable[[int], Series]
    sign: int = -1
    tail: Callable[[int], Series] = field(default=lambda order: Series.one(order))


def cf_to_series(spec: CFSpec, order: int, depth: int | None = None) -> Series:
    """Evaluate ``spec`` keeping levels 0..depth-1 (default depth order+1).

    Level d only reaches z-degrees >= d, so the default depth is exact.
    """
    if depth is None:
        depth = order + 1
    z = Series.z(order)
    link = spec.link(order)
    if link.coeffs[0]:
        raise SeriesError("continued fraction link must vanish at z = 0")
    below = spec.tail(order)
    for n in reversed(range(depth)):
        den = Series.one(order) - z * spec.level(n, order) + link * below * spec.sign
        below = series_div(Series.one(order), den)
    return below


def invert_transform(a: Series) -> Series:
    """F(x, q, z) -> F(x/q, 1/q, qz): the term x^a q^b z^n becomes x^a q^(n-a-b) z^n."""
    out = []
    for n, poly in enumerate(a.coeffs):
        terms = {}
        for (ea, eb, ec), coef in poly.items():
            new_b = n - ea - eb
            if new_b < 0:
                raise SeriesError(
                    f"term x^{ea} q^{eb} at z^{n} has fp+exc > n; not a permutation-statistic series"
                )
            terms[(ea, new_b, ec)] = coef
        out.append(StatPoly(terms))
    return Series(out)


def coefficient(a: Series, n: int) -> StatPoly:
    if n < 0 or n > a.order:
        raise SeriesError(f"degree {n} outside 0..{a.order}")
    return a.coeffs[n]


def distribution(a: Series, n: int) -> dict[tuple[int, int], int]:
    """Map (fp, exc) -> count read off the z^n coefficient (p summed out)."""
    poly = coefficient(a, n).specialize(p=1)
    return {(ea, eb): coef for (ea, eb, _), coef in poly.items()}


# ---------------------------------------------------------------------------
# Formula text such as "(1-qz)/(1-(x+q)z+(x-1)qz^2)".

_TOKEN = re.compile(r"\s*(?:(\d+)|([xqpz])|(\^)|([-+*/()]))")


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(i + j for i, j in zip(e1, e2))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return {k: v for k, v in out.items() if v}


class _Parser:
    _VAR_INDEX = {"x": 0, "q": 1, "p": 2, "z": 3}

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise SeriesError(f"cannot parse {text[pos:]!r}")
            pos = m.end()
            self.tokens.append(next(g for g in m.groups() if g is not None))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise SeriesError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> dict:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = _poly_mul({(0, 0, 0, 0): sign}, self.term())
        while self.peek() in ("+", "-"):
            s = 1 if self.take() == "+" else -1
            acc = _poly_add(acc, self.term(), s)
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = _poly_mul(acc, self.factor())
            elif tok is not None and (tok == "(" or tok.isdigit() or tok in self._VAR_INDEX):
                acc = _poly_mul(acc, self.factor())
            else:
                return acc

    def factor(self) -> dict:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            k = int(self.take())
            out = {(0, 0, 0, 0): 1}
            for _ in range(k):
                out = _poly_mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok.isdigit():
            return {(0, 0, 0, 0): int(tok)} if int(tok) else {}
        if tok in self._VAR_INDEX:
            exp = [0, 0, 0, 0]
            exp[self._VAR_INDEX[tok]] = 1
            return {tuple(exp): 1}
        raise SeriesError(f"unexpected token {tok!r}")


def parse_polynomial(text: str) -> dict:
    """Parse a polynomial in x, q, p, z into ``{(a, b, c, n): coef}``."""
    parser = _Parser(text)
    out = parser.expr()
    if parser.peek() is not None:
        raise SeriesError(f"trailing input in {text!r}")
    return out


@dataclass(frozen=True)
class RationalGFSpec:
    """Quotient of two polynomials in z with StatPoly coefficients; the
    denominator's constant term is +-1."""

    numerator: tuple
    denominator: tuple

    @classmethod
    def parse(cls, text: str) -> RationalGFSpec:
        depth = 0
        split = None
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "/" and depth == 0:
                if split is not None:
                    raise SeriesError(f"more than one top-level '/' in {text!r}")
                split = i
        if split is None:
            num, den = parse_polynomial(text), {(0, 0, 0, 0): 1}
        else:
            num, den = parse_polynomial(text[:split]), parse_polynomial(text[split + 1:])
        spec = cls(_by_degree(num), _by_degree(den))
        c0 = spec.denominator[0] if spec.denominator else ZERO
        if not c0.is_constant() or c0.constant() not in (1, -1):
            raise SeriesError(f"denominator of {text!r} has non-unit constant term {c0}")
        return spec

    def expand(self, order: int) -> Series:
        return series_div(Series(self.numerator, order), Series(self.denominator, order))


def _by_degree(poly: dict) -> tuple:
    if not poly:
        return (ZERO,)
    top = max(n for (_, _, _, n) in poly)
    buckets: list[dict] = [{} for _ in range(top + 1)]
    for (a, b, c, n), coef in poly.items():
        buckets[n][(a, b, c)] = coef
    return tuple(StatPoly(t) for t in buckets)


def series_from_text(text: str, order: int) -> Series:
    return RationalGFSpec.parse(text).expand(order)
