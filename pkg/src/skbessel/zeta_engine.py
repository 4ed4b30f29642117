"""Zeta integrals of paramodular Bessel vectors as rational functions in X.

The coefficient sequence ``c_i = beta(hat_w^i)`` enters as
``Z = sum_i c_i q^i X^i`` (and likewise ``Z* = sum_{i>=-1} c*_i q^i X^i``),
which turns the Hecke recursions into the denominators ``f_lambda`` and
``Delta_lambda`` below.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .laurent import (
    AmbientParams,
    LaurentPoly,
    RationalFn,
    as_fraction,
    diameter_and_sign,
    format_laurent,
    projectively_equal,
    series_expand,
)
from .localfield import QuadExtData, zeta_E_inverse

__all__ = [
    "ZetaProfile",
    "ZetaPolynomial",
    "f_lambda",
    "delta_lambda",
    "solve_recursion_U",
    "solve_recursion_K1",
    "solve_recursion_R",
    "kappa_zstar",
    "flat_zstar",
    "coefficients",
    "recursion_U_residuals",
    "recursion_R_residuals",
    "ps_zeta",
    "zeta_polynomial",
    "check_functional_equation",
    "raise_level",
    "oldform_basis_rank",
    "split_zeta_identity",
]

X = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
SELF_CHECK_ORDER = 20


@dataclass(frozen=True)
class ZetaProfile:
    Z: RationalFn
    flavor: str
    level_m: int
    Zstar: Optional[RationalFn] = None
    sign_eps: int = 1
    kappa: Optional[int] = None

    def __post_init__(self):
        if self.sign_eps not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kappa not in (None, 1, -1):
            raise ValueError("kappa must be +1, -1 or absent")
        low = 0 if self.flavor in ("Complete", "Flat") else -1
        for name, r, bound in (("Z", self.Z, 0), ("Z*", self.Zstar, low)):
            if r is not None and not r.is_zero() and r.leading_series_coefficient()[0] < bound:
                raise ValueError(f"{name} has a pole of order beyond {-bound} at X = 0")

    def to_json(self) -> dict:
        def enc(r):
            if r is None:
                return None
            return {"num": format_laurent(r.num), "den": format_laurent(r.den)}

        return {
            "Z": enc(self.Z),
            "Zstar": enc(self.Zstar),
            "flavor": self.flavor,
            "level_m": self.level_m,
            "sign_eps": self.sign_eps,
            "kappa": self.kappa,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class ZetaPolynomial:
    P: LaurentPoly
    index_m: int
    meta: dict = field(default_factory=dict, compare=False)

    def diameter_and_sign(self):
        return diameter_and_sign(self.P)


def _q(params) -> Fraction:
    if isinstance(params, AmbientParams):
        return params.q
    return as_fraction(params)


def f_lambda(q, lam) -> LaurentPoly:
    """1 - lam X / q^2 + X^2 / q."""
    q, lam = as_fraction(q), as_fraction(lam)
    return LaurentPoly({0: 1, 1: -lam / q**2, 2: 1 / q})


def delta_lambda(q, lam) -> LaurentPoly:
    q = as_fraction(q)
    a = q - 1
    f = f_lambda(q, lam)
    return f * f - LaurentPoly.monomial(2, a * a / q**2)


def coefficients(r: RationalFn, q, order: int, start: int = 0) -> list[Fraction]:
    """c_i for i = start..order from ``r = sum c_i q^i X^i``."""
    q = as_fraction(q)
    if r.is_zero():
        return [Fraction(0)] * (order - start + 1)
    lead = r.leading_series_coefficient()[0]
    if lead < start:
        raise ValueError("series starts below the requested index")
    s = series_expand(r, max(order - lead, 0))
    out = []
    for i in range(start, order + 1):
        k = i - s.start
        z = s.coeffs[k] if 0 <= k < len(s.coeffs) else Fraction(0)
        out.append(z / q**i)
    return out


def solve_recursion_U(params, lambda_kappa, c0, c1) -> RationalFn:
    """Closed form of lam c_i = q^3 c_{i+1} + c_{i-1} (i >= 1) from c_0, c_1.

    The numerator carries the i = 0 correction, so the returned function
    reproduces c_0 and c_1 as well as every later term.
    """
    q = _q(params)
    lam, c0, c1 = (as_fraction(v) for v in (lambda_kappa, c0, c1))
    num = LaurentPoly({0: c0, 1: q * c1 - lam * c0 / q**2})
    return RationalFn(num, f_lambda(q, lam))


def solve_recursion_K1(params, lam, kappa, c0) -> RationalFn:
    """lam c_i = q^3 c_{i+1} + q kappa c_i for i >= 0 (Hecke relation on K_1, case U-i)."""
    q = _q(params)
    lam, c0 = as_fraction(lam), as_fraction(c0)
    return RationalFn(LaurentPoly.const(c0), LaurentPoly({0: 1, 1: -(lam - q * kappa) / q**2}))


def kappa_zstar(Z: RationalFn, kappa: int, q) -> RationalFn:
    """Z* = kappa Z / (q X) for an eigenvector of w'_m with eigenvalue kappa.

    This is the only Z* in X^-1 C[[X]] for which the (m+1)-st zeta equals
    Z / ((1 + q^2)(1 - kappa X')).
    """
    q = as_fraction(q)
    return Z * RationalFn(LaurentPoly.monomial(-1, Fraction(kappa) / q))


def flat_zstar(Z: RationalFn, q, f: int) -> RationalFn:
    """Z* = -Z / q^f, the strict flat newform relation (Z_m = 0)."""
    return Z * RationalFn(-1 / as_fraction(q) ** f)


def recursion_U_residuals(Z: RationalFn, params, lam, order: int = SELF_CHECK_ORDER) -> list[Fraction]:
    q, lam = _q(params), as_fraction(lam)
    c = coefficients(Z, q, order + 1)
    return [lam * c[i] - q**3 * c[i + 1] - c[i - 1] for i in range(1, order + 1)]


def solve_recursion_R(params, lam, c0, c1, cstar_m1, cstar_0):
    """Solve the coupled Case R system for (Z, Z*)."""
    q = _q(params)
    lam, c0, c1, cm1, cs0 = (as_fraction(v) for v in (lam, c0, c1, cstar_m1, cstar_0))
    a = q - 1
    f = f_lambda(q, lam)
    det = delta_lambda(q, lam)
    if det.is_zero():
        raise ValueError("degenerate determinant Delta_lambda")
    r1 = LaurentPoly({0: c0 + a * cm1 / q, 1: a * cs0 - lam * c0 / q**2 + q * c1})
    r2 = LaurentPoly({-1: cm1 / q, 0: cs0 - lam * cm1 / q**3})
    ax = LaurentPoly.monomial(1, a)
    bx = LaurentPoly.monomial(1, a / q**2)
    Q = f * r1 - ax * r2
    R = (f * r2 - bx * r1).shift(1)
    return RationalFn(Q, det), RationalFn(R, det * X)


def recursion_R_residuals(Z, Zs, params, lam, order: int = SELF_CHECK_ORDER):
    q, lam = _q(params), as_fraction(lam)
    a = q - 1
    c = coefficients(Z, q, order + 1)
    cs = coefficients(Zs, q, order + 1, start=-1)  # cs[k] = c*_{k-1}

    def s(i):
        return cs[i + 1]

    r1 = [lam * c[i] - q**3 * c[i + 1] - c[i - 1] - q**2 * a * s(i) for i in range(1, order + 1)]
    r2 = [lam * s(i) - q**3 * s(i + 1) - s(i - 1) - a * c[i] for i in range(0, order + 1)]
    return r1, r2


def ps_zeta(profile: ZetaProfile, n: int | str, ctx: QuadExtData, params: AmbientParams | None = None) -> RationalFn:
    """Canonical n-th Piatetski-Shapiro zeta for n in {m, m+1}."""
    m = profile.level_m
    if isinstance(n, str):
        n = {"m": m, "m+1": m + 1}[n]
    if n not in (m, m + 1):
        raise ValueError("n must be m or m+1")
    q = params.q if params is not None else Fraction(ctx.q)
    f = ctx.f
    Z = profile.Z
    zs = profile.Zstar
    if zs is None:
        if profile.kappa is not None and ctx.family == "U" and profile.flavor in ("Plain", "Sharp"):
            zs = kappa_zstar(Z, profile.kappa, q)
        elif profile.flavor == "Complete":
            zs = Z
        else:
            raise ValueError("Z* is required for a noncomplete flavor")
    zeta = RationalFn(ONE, zeta_E_inverse(ctx, AmbientParams(q)))
    pre = zeta * RationalFn(1 / (1 + q**f))
    if n == m:
        return pre * (Z + zs * RationalFn(q**f))
    return pre * (Z + zs * RationalFn(LaurentPoly.monomial(f)))


def zeta_polynomial(Zn: RationalFn, L: RationalFn, n: int) -> ZetaPolynomial:
    """P_n = Z_n / L, required to be a Laurent polynomial."""
    if L.is_zero():
        raise ValueError("L must be nonzero")
    r = RationalFn._wrap(Zn) / L
    if not r.is_laurent():
        raise ValueError("Z_n / L is not a Laurent polynomial; inconsistent pair")
    return ZetaPolynomial(r.as_laurent(), n)


def check_functional_equation(P: ZetaPolynomial, eps: int, eps_pi: int, n_pi: int, f: int) -> bool:
    """P(1/X) == eps eps_pi X^(n_pi - f m) P(X)."""
    p = P.P
    if p.is_zero():
        return True
    lhs = p.invert_variable()
    rhs = p.shift(n_pi - f * P.index_m) * (eps * eps_pi)
    return lhs == rhs


def raise_level(P: ZetaPolynomial, op: str, f: int, params) -> ZetaPolynomial:
    q = _q(params)
    if op == "e":
        return ZetaPolynomial(P.P * LaurentPoly({0: q**f, f: q**f}), P.index_m + 1)
    if op == "eta":
        return ZetaPolynomial(P.P * LaurentPoly.monomial(f, q**f), P.index_m + 2)
    raise ValueError("op must be 'e' or 'eta'")


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = max((len(r) for r in rows), default=0)
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                t = rows[i][col] / rows[rank][col]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oldform_basis_rank(M: int, k: int, f: int, params) -> int:
    """Rank of {eta^a e^b (1) : 2a + b = k} among sign-plus polynomials of diameter f k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    start = ZetaPolynomial(ONE, M)
    polys = []
    for a in range(k // 2 + 1):
        P = start
        for _ in range(k - 2 * a):
            P = raise_level(P, "e", f, params)
        for _ in range(a):
            P = raise_level(P, "eta", f, params)
        dia, sign = diameter_and_sign(P.P)
        if dia != f * k or sign != 1:
            raise AssertionError("old form outside the expected polynomial space")
        polys.append(P.P)
    width = f * k + 1
    return _rank([[p[i] for i in range(width)] for p in polys])


def split_zeta_identity(L_tau, params, order: int) -> bool:
    """sum_i w_i (X^i + (1 - 1/q) sum_{j>i} X^j) versus L_tau (1 - X')/(1 - X)."""
    q = _q(params)
    L_tau = RationalFn._wrap(L_tau)
    s = series_expand(L_tau, order)
    if s.start < 0:
        raise ValueError("L_tau must be regular at X = 0")
    w = ([Fraction(0)] * s.start + s.coeffs)[: order + 1]
    lhs = [Fraction(0)] * (order + 1)
    tail = 1 - 1 / q
    run = Fraction(0)
    for j in range(order + 1):
        # coefficient of X^j: w_j + (1 - 1/q) * sum_{i<j} w_i
        lhs[j] = w[j] + tail * run
        run += w[j]
    rhs_fn = L_tau * RationalFn(LaurentPoly({0: 1, 1: -1 / q}), LaurentPoly({0: 1, 1: -1}))
    r = series_expand(rhs_fn, order)
    rhs = ([Fraction(0)] * max(r.start, 0) + r.coeffs)[: order + 1] if not rhs_fn.is_zero() else [Fraction(0)] * (order + 1)
    return lhs == rhs


def same_up_to_scalar(a, b) -> bool:
    return projectively_equal(a, b)
