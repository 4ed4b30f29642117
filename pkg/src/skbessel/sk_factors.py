"""Local classification of special Bessel newforms in Saito-Kurokawa packets.

Input is a local PGL(2) type ``tau`` (conductor exponent and root number are
data, never computed), the packet member and the quadratic algebra E.  The
output is existence of the Bessel model, the minimal level and its sign, the
Langlands L-factor and conductor, and the zeta shapes of the newform.

L-factor conventions (all as polynomials in X and X' = X/q):
  L(St)^-1 = 1 + X',  L(St^JL)^-1 = 1 - X',
  L(chi St)^-1 = 1 + X' for the unramified quadratic twist, 1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .laurent import AmbientParams, LaurentPoly, RationalFn, as_fraction, format_laurent, projectively_equal
from .localfield import QuadExtData
from .zeta_engine import (
    ZetaPolynomial,
    ZetaProfile,
    check_functional_equation,
    oldform_basis_rank,
    ps_zeta,
    solve_recursion_R,
    solve_recursion_U,
    zeta_polynomial,
)

__all__ = [
    "NOT_DETERMINED",
    "TAU_KINDS",
    "MEMBERS",
    "TauLocalType",
    "LocalSKData",
    "NewformData",
    "langlands_factors",
    "bessel_exists",
    "minimal_level",
    "newform_profile",
    "profile_functional_equations",
    "regular_L",
    "oldform_dimension",
    "classify",
]

NOT_DETERMINED = "not-determined-by-paper"
TAU_KINDS = ("UnramifiedPrincipal", "RamifiedPrincipal", "Steinberg", "TwistedSteinberg", "Supercuspidal")
MEMBERS = ("SK_tau", "SK_tauJL")

ONE = LaurentPoly.const(1)
X = LaurentPoly.monomial(1)


def _xp(q) -> LaurentPoly:
    return LaurentPoly.monomial(1, 1 / as_fraction(q))


@dataclass(frozen=True)
class TauLocalType:
    """Local component of a cuspidal representation of PGL(2).

    For ``TwistedSteinberg`` the twisting character is the quadratic
    character of ``chi``; when it is ramified the caller supplies n_tau
    and eps_tau.
    """

    kind: str
    a: Optional[Fraction] = None
    n: Optional[int] = None
    eps: Optional[int] = None
    chi: Optional[QuadExtData] = None

    def __post_init__(self):
        k = self.kind
        if k not in TAU_KINDS:
            raise ValueError(f"unknown tau kind {k!r}")
        if self.eps is not None and self.eps not in (1, -1):
            raise ValueError("eps_tau must be +1 or -1")
        if k == "UnramifiedPrincipal":
            if self.a is None or as_fraction(self.a) == 0:
                raise ValueError("an unramified principal series needs a nonzero Satake parameter")
        elif k == "RamifiedPrincipal":
            # a PGL(2) principal series chi + chi^-1 has conductor 2 a(chi)
            if self.n is None or self.n < 2 or self.n % 2:
                raise ValueError("a ramified principal series has even conductor exponent >= 2")
            if self.eps is None:
                raise ValueError("eps_tau is required")
        elif k == "Supercuspidal":
            if self.n is None or self.n < 2:
                raise ValueError("a supercuspidal has conductor exponent >= 2")
            if self.eps is None:
                raise ValueError("eps_tau is required")
        elif k == "TwistedSteinberg":
            if self.chi is None or self.chi.is_split:
                raise ValueError("the twist must be the character of a quadratic field")
            if self.chi.ramified and (self.n is None or self.eps is None):
                raise ValueError("a ramified twist needs n_tau and eps_tau from the caller")

    @classmethod
    def unramified(cls, a) -> "TauLocalType":
        return cls("UnramifiedPrincipal", a=as_fraction(a))

    @classmethod
    def ramified_principal(cls, n: int, eps: int) -> "TauLocalType":
        return cls("RamifiedPrincipal", n=n, eps=eps)

    @classmethod
    def steinberg(cls) -> "TauLocalType":
        return cls("Steinberg")

    @classmethod
    def twisted_steinberg(cls, chi: QuadExtData, n: int | None = None, eps: int | None = None) -> "TauLocalType":
        return cls("TwistedSteinberg", n=n, eps=eps, chi=chi)

    @classmethod
    def supercuspidal(cls, n: int, eps: int) -> "TauLocalType":
        return cls("Supercuspidal", n=n, eps=eps)

    @property
    def twist_unramified(self) -> bool:
        return self.kind == "TwistedSteinberg" and not self.chi.ramified

    @property
    def n_tau(self) -> int:
        if self.kind == "UnramifiedPrincipal":
            return 0
        if self.kind == "Steinberg" or self.twist_unramified:
            return 1
        return self.n

    @property
    def eps_tau(self) -> int:
        if self.kind == "UnramifiedPrincipal":
            return 1
        if self.kind == "Steinberg":
            return -1
        if self.twist_unramified:
            return 1
        return self.eps

    @property
    def discrete(self) -> bool:
        return self.kind in ("Steinberg", "TwistedSteinberg", "Supercuspidal")

    def L_tau_inverse(self, q) -> LaurentPoly:
        xp = _xp(q)
        if self.kind == "UnramifiedPrincipal":
            a = as_fraction(self.a)
            return (ONE - X * a) * (ONE - xp * (1 / a))
        if self.kind == "Steinberg" or self.twist_unramified:
            return ONE + xp
        return ONE

    def L_tau_JL_inverse(self, q) -> LaurentPoly:
        if not self.discrete:
            raise ValueError("only discrete series have a Jacquet-Langlands transfer")
        if self.kind == "Steinberg":
            return ONE - _xp(q)
        return self.L_tau_inverse(q)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "n_tau": self.n_tau, "eps_tau": self.eps_tau}
        if self.a is not None:
            d["a"] = str(self.a)
        if self.chi is not None:
            d["chi_case"] = self.chi.case
        return d


@dataclass(frozen=True)
class LocalSKData:
    """A packet member together with the algebra E of the Bessel model.

    ``tau_carries_torus_functional`` is the Waldspurger dichotomy bit for the
    configurations where it is external input (supercuspidal tau, E ramified):
    True when tau itself has a nonzero E^x-invariant functional.
    """

    tau: TauLocalType
    member: str
    bessel: QuadExtData
    tau_carries_torus_functional: Optional[bool] = None
    assume_dyadic_gamma: bool = True

    def __post_init__(self):
        if self.member not in MEMBERS:
            raise ValueError(f"member must be one of {MEMBERS}")
        if self.member == "SK_tauJL" and not self.tau.discrete:
            raise ValueError("SK(tau^JL) needs a discrete series tau")

    @property
    def f(self) -> int:
        return self.bessel.f

    @property
    def q(self) -> int:
        return self.bessel.q

    @property
    def exists(self):
        return bessel_exists(self)

    @property
    def is_jl(self) -> bool:
        return self.member == "SK_tauJL"


def langlands_factors(tau: TauLocalType, member: str, params) -> tuple[LaurentPoly, int, int]:
    """(L(s, phi_pi)^-1, N_pi, E_pi) for the packet member of tau."""
    q = params.q if isinstance(params, AmbientParams) else as_fraction(params)
    xp = _xp(q)
    if member == "SK_tau":
        return tau.L_tau_inverse(q) * (ONE - xp) * (ONE - X), tau.n_tau, tau.eps_tau
    if member == "SK_tauJL":
        if not tau.discrete:
            raise ValueError("SK(tau^JL) needs a discrete series tau")
        return tau.L_tau_JL_inverse(q) * (ONE - xp), tau.n_tau + 1, -tau.eps_tau
    raise ValueError(f"member must be one of {MEMBERS}")


def _twist_matches(tau: TauLocalType, E: QuadExtData) -> bool:
    return tau.chi.p == E.p and tau.chi.case == E.case


def bessel_exists(data: LocalSKData):
    """True, False or NOT_DETERMINED."""
    tau, E, jl = data.tau, data.bessel, data.is_jl
    n = tau.n_tau
    bit = data.tau_carries_torus_functional
    if jl and E.p == 2 and not data.assume_dyadic_gamma:
        return NOT_DETERMINED
    if E.is_split:
        if jl:
            return False
        if tau.kind == "TwistedSteinberg":
            return NOT_DETERMINED
        return n != 1
    if tau.kind == "TwistedSteinberg" and not _twist_matches(tau, E):
        return NOT_DETERMINED
    if not jl and n == 1:
        return False
    if E.family == "U":
        parity_ok = (n % 2 == 1) if jl else (n % 2 == 0)
        if bit is not None and tau.kind == "Supercuspidal" and bit != (n % 2 == 0):
            raise ValueError("dichotomy bit contradicts the conductor parity in case U")
        return parity_ok
    # case R
    if tau.kind in ("Steinberg", "TwistedSteinberg"):
        return jl
    if tau.kind == "Supercuspidal":
        if bit is None:
            return NOT_DETERMINED
        return bit != jl
    return not jl


def _require(data: LocalSKData):
    ex = bessel_exists(data)
    if ex is not True:
        raise ValueError(f"no Bessel newform for this configuration ({'absent' if ex is False else ex})")


def _sign(e: int) -> str:
    return "+" if e > 0 else "-"


def minimal_level(data: LocalSKData) -> tuple[int, int, str]:
    """(M_pi, eps_pi, strict minimal space label)."""
    _require(data)
    tau, E = data.tau, data.bessel
    n, et = tau.n_tau, tau.eps_tau
    total = n + 1 if data.is_jl else n
    if total % data.f:
        raise ArithmeticError("non-integral minimal level")
    M = total // data.f
    eps = -et if data.is_jl else et
    s = _sign(eps)
    if E.is_split:
        tag = f"K(p^{n})^{s}"
    elif not data.is_jl:
        if n == 0:
            tag = "B_0^+"
        elif E.family == "U":
            tag = f"B_{{{n - 1},+}}^{{sharp,{s}}}"
        else:
            tag = f"B_{{{2 * n - 1}}}^{{sharp,{s}}}"
    else:
        if tau.kind == "Steinberg":
            tag = "B_{1,+}^{+}" if E.family == "U" else "B_{3,+}^{+}"
        elif E.family == "U":
            tag = f"B_{{2}}^{{{s}}}" if tau.kind == "TwistedSteinberg" else f"B_{{{n},+}}^{{{s}}}"
        else:
            tag = f"B_{{{2 * n + 1}}}^{{{s}}}"
    return M, eps, tag


def regular_L(data: LocalSKData, params=None) -> RationalFn:
    q = _params(data, params).q
    tau, E = data.tau, data.bessel
    if data.is_jl:
        return RationalFn(ONE, ONE - _xp(q)) if tau.kind == "Steinberg" else RationalFn(ONE)
    L_tau = RationalFn(ONE, tau.L_tau_inverse(q))
    if E.is_split:
        return L_tau * RationalFn(ONE - _xp(q), ONE - X)
    return L_tau * RationalFn(ONE, ONE - X)


def _params(data: LocalSKData, params) -> AmbientParams:
    if params is None:
        return data.bessel.params()
    return params if isinstance(params, AmbientParams) else AmbientParams(q=params)


@dataclass(frozen=True)
class NewformData:
    profile: ZetaProfile
    ps_index: int
    ps_zeta: RationalFn
    P: ZetaPolynomial
    tag: str
    M_pi: int
    eps_pi: int
    N_pi: int
    L_phi_inverse: LaurentPoly

    def fe_indices(self) -> list[int]:
        m = self.profile.level_m
        return [m, m + 1]


def _profile(data: LocalSKData, q: Fraction, eps: int) -> ZetaProfile:
    tau, E = data.tau, data.bessel
    n = tau.n_tau
    xp = _xp(q)
    one_minus_X = ONE - X
    if E.is_split:
        return ZetaProfile(regular_L(data, q), "Complete", n, sign_eps=eps)
    if not data.is_jl:
        if n == 0:
            Z = regular_L(data, q)
            if E.family == "U":
                Z = Z * RationalFn(ONE + xp)
            return ZetaProfile(Z, "Complete", 0, sign_eps=eps)
        if E.family == "U":
            # Hecke eigenvalue q^2 + q puts the pole of Z at X = 1
            Z = solve_recursion_U(q, q * q + q, 1, 1 / q)
            if not projectively_equal(Z, RationalFn(ONE, one_minus_X)):
                raise AssertionError("recursion does not reproduce 1/(1 - X)")
            return ZetaProfile(Z, "Sharp", (n - 2) // 2, sign_eps=eps, kappa=1)
        Z, Zs = solve_recursion_R(q, 2 * q * q, 1, 1 / q, 1, 1 / q)
        return ZetaProfile(Z, "Sharp", n - 1, Zstar=Zs, sign_eps=eps)
    # SK(tau^JL); the pole coefficient c*_-1 = 1 is forced by the functional equation
    Z = regular_L(data, q)
    if tau.kind == "Steinberg":
        if E.family == "U":
            return ZetaProfile(Z, "Plain", 0, sign_eps=eps, kappa=1)
        return ZetaProfile(Z, "Plain", 1, Zstar=Z * RationalFn(LaurentPoly.monomial(-1, 1 / q)), sign_eps=eps)
    if E.family == "U":
        if tau.kind == "TwistedSteinberg":
            return ZetaProfile(Z, "Complete", 1, sign_eps=eps)
        return ZetaProfile(Z, "Plain", (n - 1) // 2, sign_eps=eps, kappa=1)
    return ZetaProfile(Z, "Plain", n, Zstar=RationalFn(LaurentPoly.monomial(-1, 1 / q)), sign_eps=eps)


def newform_profile(data: LocalSKData, params=None) -> NewformData:
    """Zetas of the newform and the zeta polynomial at the minimal level."""
    _require(data)
    pr = _params(data, params)
    q = pr.q
    M, eps, tag = minimal_level(data)
    L_inv, N, _E = langlands_factors(data.tau, data.member, pr)
    prof = _profile(data, q, eps)
    idx = prof.level_m if prof.flavor == "Complete" else prof.level_m + 1
    if idx != M:
        raise AssertionError(f"profile index {idx} differs from the minimal level {M}")
    Zn = ps_zeta(prof, idx, data.bessel, pr)
    P = zeta_polynomial(Zn, RationalFn(ONE, L_inv), idx)
    return NewformData(prof, idx, Zn, P, tag, M, eps, N, L_inv)


def profile_functional_equations(nf: NewformData, data: LocalSKData, params=None) -> dict[int, bool]:
    """Functional equation of P_n for each index n at which the profile has a zeta."""
    pr = _params(data, params)
    L = RationalFn(ONE, nf.L_phi_inverse)
    out = {}
    for n in nf.fe_indices():
        P = zeta_polynomial(ps_zeta(nf.profile, n, data.bessel, pr), L, n)
        out[n] = check_functional_equation(P, nf.profile.sign_eps, nf.eps_pi, nf.N_pi, data.f)
    return out


def oldform_dimension(data: LocalSKData, k: int) -> int:
    _require(data)
    if k < 0:
        raise ValueError("k must be nonnegative")
    dim = k // 2 + 1
    M = minimal_level(data)[0]
    if oldform_basis_rank(M, k, data.f, data.q) != dim:
        raise AssertionError("level raising basis has the wrong rank")
    return dim


def classify(data: LocalSKData, params=None) -> dict:
    """Everything the ``factor`` command reports, as plain JSON values."""
    pr = _params(data, params)
    ex = bessel_exists(data)
    out: dict = {"exists": ex, "tau": data.tau.to_json(), "member": data.member, "case": data.bessel.case, "p": data.bessel.p}
    L_inv, N, E_pi = langlands_factors(data.tau, data.member, pr)
    out.update(N_pi=N, E_pi=E_pi, L_phi_inverse=format_laurent(L_inv))
    if ex is not True:
        return out
    nf = newform_profile(data, pr)
    Lreg = regular_L(data, pr)

    def enc(r: RationalFn):
        return {"num": format_laurent(r.num), "den": format_laurent(r.den)}

    out.update(
        M_pi=nf.M_pi,
        eps_pi=nf.eps_pi,
        strict_space=nf.tag,
        Lreg=enc(Lreg),
        newform_Z=enc(nf.profile.Z),
        newform_Zstar=enc(nf.profile.Zstar) if nf.profile.Zstar is not None else None,
        newform_PSzeta=enc(nf.ps_zeta),
        ps_index=nf.ps_index,
        zeta_polynomial=format_laurent(nf.P.P),
    )
    return out
