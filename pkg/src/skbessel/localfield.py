"""The base field Q_p at finite precision and quadratic algebras E over it.

``E = F + F*sigma`` with ``sigma = [[0, e], [1, 0]]`` so ``sigma^2 = e``.
The split algebra uses ``e = 1``.  Elements of E are stored by their
coordinates in the basis ``{1, sigma}`` in every case, including the
dyadic unramified case where the integers of E need the half-integral
generator ``(1 + b*sigma)/2``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import AmbientParams, LaurentPoly, Xp
from .padic_linalg import INF, Lattice, det, mod_pk, unit_part, vp

__all__ = [
    "DEFAULT_PRECISION",
    "default_precision",
    "FieldElem",
    "QuadExtData",
    "QuadElem",
    "CASES",
    "classify",
    "quad_arith",
    "residue_reps",
    "zeta_E_inverse",
]

CASES = ("Split", "U-i", "U-ii", "R-i", "R-ii")
DEFAULT_PRECISION = 8


def default_precision() -> int:
    raw = os.environ.get("SKBESSEL_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    n = int(raw)
    if n < 1:
        raise ValueError("SKBESSEL_PRECISION must be positive")
    return n


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrecisionError(ArithmeticError):
    pass


class FieldElem:
    """``p^valuation * unit`` with ``unit`` known modulo ``p^precision``.

    Zero carries valuation ``inf``; two zeros compare equal whatever their
    precision.
    """

    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p: int, valuation, unit: int, precision: int):
        self.p = p
        self.precision = precision
        if valuation == INF:
            self.valuation, self.unit = INF, 0
            return
        if precision < 1:
            raise PrecisionError("precision exhausted")
        m = p**precision
        unit %= m
        if unit % p == 0:
            raise ValueError("unit part must be prime to p")
        self.valuation, self.unit = int(valuation), unit

    @classmethod
    def zero(cls, p: int, precision: int | None = None) -> "FieldElem":
        return cls(p, INF, 0, precision or default_precision())

    @classmethod
    def from_rational(cls, x, p: int, precision: int | None = None) -> "FieldElem":
        N = precision or default_precision()
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, N)
        v = vp(x, p)
        return cls(p, v, mod_pk(unit_part(x, p), p, N), N)

    def is_zero(self) -> bool:
        return self.valuation == INF

    def to_fraction(self) -> Fraction:
        """The integer-unit representative ``p^v * unit`` as a rational."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other
        return FieldElem.from_rational(other, self.p, self.precision)

    def _abs_prec(self):
        return INF if self.is_zero() else self.valuation + self.precision

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p = self.p
        absprec = min(self._abs_prec(), other._abs_prec())
        vmin = min(self.valuation, other.valuation)
        span = absprec - vmin
        m = p**span
        s = (self.unit * p ** (self.valuation - vmin) + other.unit * p ** (other.valuation - vmin)) % m
        if s == 0:
            return FieldElem.zero(p, max(1, span))
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        return FieldElem(p, vmin + k, s, span - k)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return FieldElem(self.p, self.valuation, -self.unit, self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return FieldElem.zero(self.p, min(self.precision, other.precision))
        n = min(self.precision, other.precision)
        return FieldElem(self.p, self.valuation + other.valuation, self.unit * other.unit, n)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.p**self.precision
        return FieldElem(self.p, -self.valuation, pow(self.unit, -1, m), self.precision)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.valuation != other.valuation:
            return False
        n = min(self.precision, other.precision)
        return (self.unit - other.unit) % self.p**n == 0

    def __hash__(self):
        return hash((self.p, self.valuation))

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.precision})"
        return f"{self.p}^{self.valuation} * {self.unit}"


@dataclass(frozen=True)
class QuadExtData:
    """Classification record of the quadratic algebra E over Q_p."""

    p: int
    case: str
    e: Fraction
    f: int
    dv: int
    m0: int
    diff_exp: int
    alpha: Fraction | None = None
    b: Fraction | None = None
    precision: int = field(default_factory=default_precision)

    @property
    def q(self) -> int:
        return self.p

    @property
    def is_split(self) -> bool:
        return self.case == "Split"

    @property
    def family(self) -> str:
        """'U', 'R' or 'Split'."""
        return self.case if self.is_split else self.case[0]

    @property
    def ramified(self) -> bool:
        return self.family == "R"

    @property
    def omega(self) -> tuple[Fraction, Fraction]:
        """sigma-coordinates of the second o-basis vector of the integers."""
        if self.case == "U-ii":
            return (Fraction(1, 2), self.b / 2)
        if self.is_split:
            return (Fraction(1, 2), Fraction(1, 2))
        return (Fraction(0), Fraction(1))

    @property
    def varrho(self) -> tuple[Fraction, Fraction]:
        """sigma-coordinates of the fixed generator of the prime of E."""
        if self.family == "U":
            return (Fraction(self.p), Fraction(0))
        if self.case == "R-i":
            return (Fraction(0), Fraction(1))
        if self.case == "R-ii":
            return (self.alpha, Fraction(1))
        # split: the idempotent pair (p, 1)
        return (Fraction(self.p + 1, 2), Fraction(self.p - 1, 2))

    @property
    def ramification_index(self) -> int:
        return 2 if self.ramified else 1

    def to_json(self) -> dict:
        return {"p": self.p, "case": self.case, "f": self.f, "dv": self.dv, "m0": self.m0, "diff_exp": self.diff_exp}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def params(self, a=None) -> AmbientParams:
        return AmbientParams(q=self.q, a=a)

    # element helpers on sigma coordinates
    def mul(self, z, w):
        return (z[0] * w[0] + self.e * z[1] * w[1], z[0] * w[1] + z[1] * w[0])

    def conj(self, z):
        return (z[0], -z[1])

    def norm(self, z) -> Fraction:
        return z[0] * z[0] - self.e * z[1] * z[1]

    def inv(self, z):
        n = self.norm(z)
        if n == 0:
            raise ZeroDivisionError("element of E is not invertible")
        return (z[0] / n, -z[1] / n)

    def power(self, z, k: int):
        if k < 0:
            return self.power(self.inv(z), -k)
        out = (Fraction(1), Fraction(0))
        for _ in range(k):
            out = self.mul(out, z)
        return out

    def integers_lattice(self) -> Lattice:
        """The integers of E as a Z_(p)-lattice in sigma coordinates."""
        return Lattice([(1, 0), self.omega], self.p)

    def prime_power_lattice(self, k: int) -> Lattice:
        """The k-th power of the prime of E (for split: varrho^k O)."""
        r = self.power(self.varrho, k)
        w0 = (Fraction(1), Fraction(0))
        return Lattice([self.mul(r, w0), self.mul(r, self.omega)], self.p)


def _discriminant_exponent(p: int, e: Fraction, omega) -> int:
    basis = [(Fraction(1), Fraction(0)), omega]

    def tr(z, w):
        # trace of z*w for z = x + y sigma
        return 2 * (z[0] * w[0] + e * z[1] * w[1])

    gram = [[tr(a, b) for b in basis] for a in basis]
    return int(vp(det(gram), p))


def _nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ValueError("no nonresidue")


DESCRIPTORS = ("nonsquare-unit", "uniformizer", "unit-with-2adic-condition", "split")


def classify(p: int, e_descriptor: str, precision: int | None = None) -> QuadExtData:
    """Build the classification record of E for a prime and a descriptor.

    ``nonsquare-unit`` gives case U-i (odd p) or U-ii (p = 2);
    ``uniformizer`` gives R-i; ``unit-with-2adic-condition`` gives R-ii
    (p = 2 only); ``split`` gives F + F.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    N = precision or default_precision()
    if e_descriptor == "split":
        e = Fraction(1)
        case, f, dv, m0 = "Split", 1, 1, 1
        alpha = b = None
    elif e_descriptor == "nonsquare-unit":
        if p == 2:
            case, e, b, alpha = "U-ii", Fraction(5), Fraction(1), None
            dv = 2
        else:
            case, e, b, alpha = "U-i", Fraction(_nonresidue(p)), None, None
            dv = 1
        f, m0 = 2, 1
    elif e_descriptor == "uniformizer":
        case, e, f, dv, m0 = "R-i", Fraction(p), 1, 1, 2
        alpha = b = None
    elif e_descriptor == "unit-with-2adic-condition":
        if p != 2:
            raise ValueError("the dyadic ramified unit case needs p = 2")
        # alpha^2 - e = 2 with alpha = 1
        case, e, f, dv, m0 = "R-ii", Fraction(-1), 1, 1, 2
        alpha, b = Fraction(1), None
    else:
        raise ValueError(f"unknown descriptor {e_descriptor!r}; expected one of {DESCRIPTORS}")
    omega = {"U-ii": (Fraction(1, 2), (b or 0) / 2), "Split": (Fraction(1, 2), Fraction(1, 2))}.get(
        case, (Fraction(0), Fraction(1))
    )
    diff_exp = 0 if case in ("Split", "U-i", "U-ii") else _discriminant_exponent(p, e, omega)
    return QuadExtData(p=p, case=case, e=e, f=f, dv=dv, m0=m0, diff_exp=diff_exp, alpha=alpha, b=b, precision=N)


def classify_case(p: int, case: str, precision: int | None = None) -> QuadExtData:
    """Same as :func:`classify` but keyed by the case name."""
    table = {
        "Split": "split",
        "U-i": "nonsquare-unit",
        "U-ii": "nonsquare-unit",
        "R-i": "uniformizer",
        "R-ii": "unit-with-2adic-condition",
    }
    if case not in table:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    ctx = classify(p, table[case], precision)
    if ctx.case != case:
        raise ValueError(f"case {case} is not available for p = {p}")
    return ctx


class QuadElem:
    """``x + y*sigma`` with FieldElem coordinates."""

    __slots__ = ("ctx", "x", "y")

    def __init__(self, ctx: QuadExtData, x, y=0):
        self.ctx = ctx
        N = ctx.precision
        self.x = x if isinstance(x, FieldElem) else FieldElem.from_rational(x, ctx.p, N)
        self.y = y if isinstance(y, FieldElem) else FieldElem.from_rational(y, ctx.p, N)

    @classmethod
    def sigma(cls, ctx):
        return cls(ctx, 0, 1)

    def _coerce(self, other):
        return other if isinstance(other, QuadElem) else QuadElem(self.ctx, other)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.ctx, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.ctx, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        e = self.ctx.e
        return QuadElem(self.ctx, self.x * o.x + self.y * o.y * e, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.ctx, self.x, -self.y)

    def norm(self) -> FieldElem:
        return self.x * self.x - self.y * self.y * self.ctx.e

    def trace(self) -> FieldElem:
        return self.x + self.x

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n.is_zero():
            raise PrecisionError("norm vanishes at the working precision")
        ni = n.inverse()
        return QuadElem(self.ctx, self.x * ni, -self.y * ni)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def to_fractions(self):
        return (self.x.to_fraction(), self.y.to_fraction())

    def __repr__(self):
        return f"QuadElem({self.x!r} + {self.y!r}*sigma)"


def quad_arith(z: QuadElem, w: QuadElem | None, op: str):
    if op == "add":
        return z + w
    if op == "mul":
        return z * w
    if op == "conj":
        return z.conj()
    if op == "norm":
        return z.norm()
    if op == "trace":
        return z.trace()
    if op == "inv":
        return z.inverse()
    raise ValueError(f"unknown operation {op!r}")


RESIDUE_LIMIT = 10**6


def residue_reps(ctx: QuadExtData, k: int, limit: int = RESIDUE_LIMIT) -> list[tuple[Fraction, Fraction]]:
    """Pairwise incongruent representatives of O/P^k as sigma coordinates."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    size = ctx.q ** (ctx.f * k)
    if size > limit:
        raise ValueError(f"{size} residues exceed the enumeration bound {limit}")
    O = ctx.integers_lattice()
    reps = O.quotient_reps(ctx.prime_power_lattice(k))
    assert len(reps) == size
    return [tuple(r) for r in reps]


def residue_field_reps(ctx: QuadExtData) -> list[tuple[Fraction, Fraction]]:
    return residue_reps(ctx, 1)


def zeta_E_inverse(ctx: QuadExtData, params: AmbientParams | None = None) -> LaurentPoly:
    """Inverse of zeta_E(s + 1/2) as a polynomial in X."""
    q = params.q if params is not None else ctx.q
    xp = Xp(q)
    one = LaurentPoly.const(1)
    if ctx.is_split:
        return (one - xp) ** 2
    if ctx.family == "U":
        return one - xp * xp
    return one - xp


def norm_is_surjective_on_residues(ctx: QuadExtData) -> bool:
    """Check that the norm maps residue units of E onto those of F."""
    p = ctx.p
    images = set()
    for z in residue_reps(ctx, 1):
        n = ctx.norm(z)
        if vp(n, p) == 0:
            images.add(mod_pk(n, p, 1))
    return images == set(range(1, p))


def random_integer(ctx: QuadExtData, rng, k: int | None = None) -> tuple[Fraction, Fraction]:
    """Random element of O modulo p^k in sigma coordinates."""
    k = k or ctx.precision
    m = ctx.p**k
    a, b = rng.randrange(m), rng.randrange(m)
    w = ctx.omega
    return (Fraction(a) + b * w[0], b * w[1])


__all__ += ["PrecisionError", "classify_case", "residue_field_reps", "norm_is_surjective_on_residues", "random_integer"]
