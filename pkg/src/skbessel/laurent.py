"""Laurent polynomials and rational functions in one variable X over Q.

Every zeta integral, L-factor and zeta polynomial handled by the package is
a rational function in ``X = q^(-s+1/2)``.  The companion variable
``X' = q^(-s-1/2)`` is never stored separately; it is always ``X/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple

__all__ = [
    "AmbientParams",
    "LaurentPoly",
    "RationalFn",
    "Series",
    "X",
    "Xp",
    "as_fraction",
    "lp_arith",
    "invert_variable",
    "diameter_and_sign",
    "series_expand",
    "power_series",
    "projectively_equal",
    "parse_laurent",
    "parse_rational",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"1/3"`` to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class AmbientParams:
    """Residue size ``q`` and optional Satake parameter ``a``.

    ``psi_unramified`` records the additive character convention
    (trivial on the integers, nontrivial on the inverse prime ideal).  It is
    a flag only; no character values are ever computed.
    """

    q: Fraction
    a: Fraction | None = None
    psi_unramified: bool = True

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        if self.q <= 1:
            raise ValueError("q must exceed 1")
        if self.a is not None:
            object.__setattr__(self, "a", as_fraction(self.a))
            if self.a == 0:
                raise ValueError("Satake parameter must be nonzero")

    @property
    def X(self) -> "LaurentPoly":
        return LaurentPoly.monomial(1)

    @property
    def Xp(self) -> "LaurentPoly":
        """X' = X/q."""
        return LaurentPoly.monomial(1, 1 / self.q)


class LaurentPoly:
    """Finitely supported map exponent -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | Iterable | None = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        acc: dict[int, Fraction] = {}
        for k, v in items:
            c = as_fraction(v)
            if c:
                acc[int(k)] = acc.get(int(k), Fraction(0)) + c
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_coeff_list(cls, coeffs, start: int = 0) -> "LaurentPoly":
        return cls({start + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def _wrap(cls, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return cls.const(value)

    # views
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def terms(self):
        return self._terms

    def __getitem__(self, k: int) -> Fraction:
        for e, c in self._terms:
            if e == k:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self[0]

    # arithmetic
    def __add__(self, other):
        other = LaurentPoly._wrap(other)
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc.get(k, Fraction(0)) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms})

    def __sub__(self, other):
        return self + (-LaurentPoly._wrap(other))

    def __rsub__(self, other):
        return LaurentPoly._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        other = LaurentPoly._wrap(other)
        acc: dict[int, Fraction] = {}
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                acc[k1 + k2] = acc.get(k1 + k2, Fraction(0)) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            k, c = self._terms[0]
            return LaurentPoly({k * n: c**n})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (LaurentPoly, RationalFn)):
            return RationalFn(self) / other
        c = as_fraction(other)
        return LaurentPoly({k: v / c for k, v in self._terms})

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return other == self
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(as_fraction(other))
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by X^k."""
        return LaurentPoly({e + k: c for e, c in self._terms})

    def scale_variable(self, t) -> "LaurentPoly":
        """Substitute X -> t*X."""
        t = as_fraction(t)
        return LaurentPoly({e: c * t**e for e, c in self._terms})

    def invert_variable(self) -> "LaurentPoly":
        return LaurentPoly({-e: c for e, c in self._terms})

    def evaluate(self, x) -> Fraction:
        x = as_fraction(x)
        return sum((c * x**e for e, c in self._terms), Fraction(0))

    def diameter_and_sign(self):
        return diameter_and_sign(self)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Q[X, X^-1]; raises ValueError if not exact."""
        other = LaurentPoly._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        shift = other.min_exp()
        num = _to_dense(self.shift(-self.min_exp()))
        den = _to_dense(other.shift(-shift))
        quo, rem = _poly_divmod(num, den)
        if any(rem):
            raise ValueError(f"{self} is not divisible by {other}")
        return LaurentPoly.from_coeff_list(quo, self.min_exp() - shift)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        return format_laurent(self)


X = LaurentPoly.monomial(1)


def Xp(q) -> LaurentPoly:
    """The variable X' = X/q."""
    return LaurentPoly.monomial(1, 1 / as_fraction(q))


# dense polynomial helpers (lists, constant term first)

def _to_dense(p: LaurentPoly) -> list[Fraction]:
    if p.is_zero():
        return []
    if p.min_exp() < 0:
        raise ValueError("negative exponents in dense conversion")
    out = [Fraction(0)] * (p.max_exp() + 1)
    for e, c in p.terms():
        out[e] = c
    return out


def _trim(a: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num, den = _trim(num), _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    rem = list(num)
    quo = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(quo) - 1, -1, -1):
        c = rem[i + len(den) - 1] / lead
        quo[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    return quo, _trim(rem[: len(den) - 1])


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


# reflection and diameter

def lp_arith(p: LaurentPoly, r: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return p + r
    if op == "sub":
        return p - r
    if op == "mul":
        return p * r
    raise ValueError(f"unknown operation {op!r}")


def invert_variable(p: LaurentPoly) -> LaurentPoly:
    return p.invert_variable()


def diameter_and_sign(p: LaurentPoly):
    """Return ``(dia, sign)``.

    For ``P = c_{-n} X^{-n} + ... + c_m X^m`` with both end coefficients
    nonzero, ``dia = m - n`` (largest plus smallest exponent).  This is the
    exponent that makes ``X^dia * P(1/X)`` a candidate multiple of ``P``.
    ``sign`` is +1 or -1 when ``X^dia * P(1/X) = sign * P`` and None
    otherwise.
    """
    if p.is_zero():
        raise ValueError("undefined diameter")
    dia = p.max_exp() + p.min_exp()
    reflected = p.invert_variable().shift(dia)
    if reflected == p:
        return dia, 1
    if reflected == -p:
        return dia, -1
    return dia, None


# rational functions

class RationalFn:
    """Quotient of two Laurent polynomials, stored in canonical form.

    Canonical form: ``X^k * N(X) / D(X)`` with N, D coprime polynomials,
    nonzero constant terms and ``D(0) = 1``.  Equal values therefore have
    identical ``num``/``den`` attributes.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly._wrap(num)
        den = LaurentPoly.const(1) if den is None else LaurentPoly._wrap(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFn":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def _wrap(cls, value) -> "RationalFn":
        if isinstance(value, RationalFn):
            return value
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_laurent(self) -> bool:
        return self.den == LaurentPoly.const(1)

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = RationalFn._wrap(other)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFn._wrap(other))

    def __rsub__(self, other):
        return RationalFn._wrap(other) - self

    def __mul__(self, other):
        other = RationalFn._wrap(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFn._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFn._wrap(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFn(1) / (self ** (-n))
        out = RationalFn(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, (RationalFn, LaurentPoly)):
            try:
                other = RationalFn(as_fraction(other))
            except TypeError:
                return NotImplemented
        other = RationalFn._wrap(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def invert_variable(self) -> "RationalFn":
        return RationalFn(self.num.invert_variable(), self.den.invert_variable())

    def scale_variable(self, t) -> "RationalFn":
        return RationalFn(self.num.scale_variable(t), self.den.scale_variable(t))

    def normalize(self) -> "RationalFn":
        return RationalFn(self.num, self.den)

    def evaluate(self, x) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return self.num.evaluate(x) / d

    def leading_series_coefficient(self) -> tuple[int, Fraction]:
        """(exponent, coefficient) of the first nonzero term around X = 0."""
        if self.is_zero():
            raise ValueError("zero has no leading term")
        # den(0) = 1 in canonical form
        k = self.num.min_exp()
        return k, self.num[k]

    def projective_normal_form(self) -> "RationalFn":
        """Scale so that the first nonzero series coefficient is 1."""
        if self.is_zero():
            return self
        _, c = self.leading_series_coefficient()
        return self * RationalFn(1 / c)

    def __repr__(self):
        return f"RationalFn({str(self)!r})"

    def __str__(self):
        if self.is_laurent():
            return f"({format_laurent(self.num)})/(1)"
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    k = num.min_exp() - den.min_exp()
    n = _to_dense(num.shift(-num.min_exp()))
    d = _to_dense(den.shift(-den.min_exp()))
    g = _poly_gcd(n, d)
    if len(g) > 1:
        n, _ = _poly_divmod(n, g)
        d, _ = _poly_divmod(d, g)
    c0 = d[0]
    n = [c / c0 for c in n]
    d = [c / c0 for c in d]
    return LaurentPoly.from_coeff_list(n, k), LaurentPoly.from_coeff_list(d, 0)


def projectively_equal(a, b) -> bool:
    """True when ``a = c*b`` for a nonzero constant c (the paper's ``~``)."""
    a, b = RationalFn._wrap(a), RationalFn._wrap(b)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.projective_normal_form() == b.projective_normal_form()


# series

class Series(NamedTuple):
    start: int
    coeffs: list


def series_expand(r, order: int) -> Series:
    """Expand around X = 0: ``r = X^start * sum(coeffs[i] * X^i)``.

    ``order + 1`` coefficients are returned.  For the zero function the
    start is 0 and every coefficient vanishes.
    """
    r = RationalFn._wrap(r)
    if order < 0:
        raise ValueError("order must be nonnegative")
    if r.is_zero():
        return Series(0, [Fraction(0)] * (order + 1))
    start = r.num.min_exp()  # den has nonzero constant term
    num = _to_dense(r.num.shift(-start))
    den = _to_dense(r.den)
    out: list[Fraction] = []
    d0 = den[0]
    for i in range(order + 1):
        acc = num[i] if i < len(num) else Fraction(0)
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc / d0)
    return Series(start, out)


def power_series(r, order: int) -> list[Fraction]:
    """Coefficients of X^0..X^order; the function must be regular at 0."""
    s = series_expand(r, order)
    if s.start < 0:
        raise ValueError("function has a pole at X = 0")
    if s.start == 0:
        return s.coeffs
    return ([Fraction(0)] * s.start + s.coeffs)[: order + 1]


# text format

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.terms()):
        mag = abs(c)
        if e == 0:
            body = _fmt_coeff(mag)
        else:
            mono = "X" if e == 1 else f"X^{e}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<x1>X)(?:\^(?P<e1>-?\d+))?)?
          |
          (?P<x2>X)(?:\^(?P<e2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the grammar produced by ``str(LaurentPoly)``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos, acc, first = 0, {}, True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("x2") is None):
            raise ValueError(f"cannot parse Laurent polynomial near {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("x1"):
                e = int(m.group("e1")) if m.group("e1") else 1
            else:
                e = 0
        else:
            c = Fraction(1)
            e = int(m.group("e2")) if m.group("e2") else 1
        acc[e] = acc.get(e, Fraction(0)) + sign * c
        pos, first = m.end(), False
    return LaurentPoly(acc)


def parse_rational(text: str) -> RationalFn:
    """Parse ``(num)/(den)`` or a bare Laurent polynomial."""
    s = text.strip()
    m = re.fullmatch(r"\((?P<n>[^()]*)\)\s*/\s*\((?P<d>[^()]*)\)", s)
    if m:
        return RationalFn(parse_laurent(m.group("n")), parse_laurent(m.group("d")))
    return RationalFn(parse_laurent(s))
