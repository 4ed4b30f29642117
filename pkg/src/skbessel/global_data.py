"""Global assembly over Q: field matching, root numbers and Fourier-Jacobi style coefficients.

Local Euler factors are written in X_p = p^(-s+1/2).  If the factor at p
expands as sum_k d_k X_p^k, then the normalized coefficient of
``sum_n F(n sigma') / F(sigma') n^-(s + kappa - 1/2)`` at n = p^k is
``d_k p^(k kappa)``, so every coefficient is ``c_n = n^kappa * a_n`` with
``a_n`` the multiplicative extension of the d_k.  Both are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Mapping

import gmpy2

from .laurent import LaurentPoly, RationalFn, power_series
from .localfield import QuadExtData, classify_case
from .sk_factors import TauLocalType

__all__ = [
    "ParityError",
    "GlobalTauData",
    "PacketChoice",
    "ArchFactor",
    "primes_upto",
    "fundamental_discriminant",
    "chi_E",
    "match_field",
    "arch_factor",
    "finite_root_sign",
    "global_root_number",
    "local_euler_series",
    "fourier_dirichlet",
    "dirichlet_product",
]


class ParityError(ValueError):
    pass


def primes_upto(n: int) -> list[int]:
    out, p = [], 2
    while p <= n:
        out.append(p)
        p = int(gmpy2.next_prime(p))
    return out


@dataclass(frozen=True)
class GlobalTauData:
    """Local types of a cuspidal representation of PGL(2) over Q.

    ``local`` maps primes to their local type; primes absent from it are
    unknown, not unramified.  The archimedean component is holomorphic
    discrete series of weight 2 kappa with root number (-1)^kappa unless
    ``arch_sign`` overrides it.
    """

    local: Mapping[int, TauLocalType]
    weight_kappa: int
    level_N: int | None = None
    global_root: int | None = None
    arch_sign: int | None = None

    def __post_init__(self):
        if self.weight_kappa < 1:
            raise ValueError("kappa must be >= 1")
        for p in self.local:
            if not gmpy2.is_prime(p):
                raise ValueError(f"{p} is not prime")
        N = prod(p ** t.n_tau for p, t in self.local.items())
        if self.level_N is not None and self.level_N != N:
            raise ValueError(f"level {self.level_N} differs from the product of local conductors {N}")
        if self.global_root is not None and self.global_root != self.root_number:
            raise ParityError("global root number differs from the product of local signs")

    @property
    def eps_infinity(self) -> int:
        return self.arch_sign if self.arch_sign is not None else (-1) ** self.weight_kappa

    @property
    def root_number(self) -> int:
        return self.eps_infinity * prod(t.eps_tau for t in self.local.values())

    @property
    def S_tau(self) -> frozenset[int]:
        return frozenset(p for p, t in self.local.items() if t.discrete)

    @property
    def N(self) -> int:
        return prod(p ** t.n_tau for p, t in self.local.items())

    def tau_at(self, p: int) -> TauLocalType:
        if p not in self.local:
            raise KeyError(f"no local data supplied for p = {p}")
        return self.local[p]


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(-d)) for squarefree d > 0."""
    if d < 1 or not _squarefree(d):
        raise ValueError("d must be a squarefree positive integer")
    return -d if (-d) % 4 == 1 else -4 * d


def _squarefree(n: int) -> bool:
    return all(n % (p * p) for p in primes_upto(int(gmpy2.isqrt(n))))


def chi_E(d: int, p: int) -> int:
    """chi_{E,p}(p) for E = Q(sqrt(-d)): 1 split, -1 inert, 0 ramified."""
    return int(gmpy2.kronecker(fundamental_discriminant(d), p))


@dataclass(frozen=True)
class PacketChoice:
    """S (finite primes where the JL member is taken) and E = Q(sqrt(-d))."""

    S: frozenset[int] = field(default_factory=frozenset)
    d: int | None = None

    def local_field(self, p: int) -> QuadExtData:
        if self.d is None:
            raise ValueError("no field attached to this choice")
        c = chi_E(self.d, p)
        if c == 1:
            return classify_case(p, "Split")
        if c == -1:
            return classify_case(p, "U-ii" if p == 2 else "U-i")
        if p == 2 and self.d % 2:
            return classify_case(2, "R-ii")
        return classify_case(p, "R-i")

    def validate(self, tau: GlobalTauData) -> None:
        extra = set(self.S) - tau.S_tau
        if extra:
            raise ValueError(f"S contains primes where tau is not discrete: {sorted(extra)}")
        if (-1) ** len(self.S) != -tau.root_number:
            raise ParityError("(-1)^|S| must equal -eps(1/2, tau) for the cuspidal packet member")


def match_field(choice: PacketChoice, tau: GlobalTauData, local_dichotomy: Mapping[int, tuple[int, int]]) -> bool:
    """Whether E matches S.

    ``local_dichotomy[p] = (eps(1/2,tau_p) eps(1/2,tau_p x chi_E), chi_E(-1))``
    must be given for every p in S_tau.
    """
    for p in sorted(tau.S_tau):
        if p not in local_dichotomy:
            raise ValueError(f"missing dichotomy data at p = {p}")
        product, chi_m1 = local_dichotomy[p]
        want = chi_m1 if p in choice.S else -chi_m1
        if product != want:
            return False
    return True


@dataclass(frozen=True)
class ArchFactor:
    kappa: int
    gamma_shifts: tuple[Fraction, Fraction]
    power_of_2pi: tuple[int, int]  # (coefficient of s, constant): (2 pi)^(-2 s - kappa)
    fe_sign: int

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "gamma_shifts": [str(x) for x in self.gamma_shifts],
            "power_of_2pi": f"-2s-{self.kappa}",
            "fe_sign": self.fe_sign,
        }


def arch_factor(kappa: int) -> ArchFactor:
    """Gamma factor (2pi)^(-2s-kappa) Gamma(s+1/2) Gamma(s+kappa-1/2) of SK(tau_infinity^JL)."""
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    return ArchFactor(kappa, (Fraction(1, 2), Fraction(2 * kappa - 1, 2)), (-2, -kappa), (-1) ** (kappa + 1))


def finite_root_sign(tau: GlobalTauData, choice: PacketChoice) -> int:
    """Product over finite p of the local signs E_pi: eps_tau,p, flipped at p in S."""
    return prod((-t.eps_tau if p in choice.S else t.eps_tau) for p, t in tau.local.items())


def global_root_number(tau: GlobalTauData, choice: PacketChoice) -> int:
    """eps(1/2, phi_pi) for the packet member; the infinite place is always of JL type."""
    choice.validate(tau)
    total = finite_root_sign(tau, choice) * -tau.eps_infinity
    if total != 1:
        raise ParityError("global root number of the packet member is not +1")
    return total


def local_euler_series(tau_p: TauLocalType, p: int, chi: int, in_S: bool, k_max: int) -> list[Fraction]:
    """d_0..d_kmax of L(s+1/2, chi_E,p) L(s, tau_p) (1 - X)^-1 [p not in S] in X = p^(-s+1/2)."""
    xp = LaurentPoly.monomial(1, Fraction(1, p))
    den = tau_p.L_tau_inverse(p) * (LaurentPoly.const(1) - xp * chi)
    if not in_S:
        den = den * LaurentPoly({0: 1, 1: -1})
    return power_series(RationalFn(LaurentPoly.const(1), den), k_max)


def _local_tables(tau: GlobalTauData, choice: PacketChoice, d: int, n_max: int) -> dict[int, list[Fraction]]:
    out = {}
    kappa = tau.weight_kappa
    for p in primes_upto(n_max):
        t = tau.tau_at(p)
        k_max, pk = 0, p
        while pk <= n_max:
            k_max += 1
            pk *= p
        ds = local_euler_series(t, p, chi_E(d, p), p in choice.S, k_max)
        out[p] = [ds[k] * p ** (k * kappa) for k in range(k_max + 1)]
    return out


def fourier_dirichlet(tau: GlobalTauData, choice: PacketChoice, d: int, n_max: int, nonvanishing: bool = True) -> list[Fraction]:
    """c_1..c_{n_max}, assembled multiplicatively from the Euler factors."""
    if not nonvanishing:
        raise ValueError("the identity needs L(1/2, tau x chi_E) != 0")
    if n_max < 1:
        return []
    tables = _local_tables(tau, choice, d, n_max)
    spf = list(range(n_max + 1))
    for p in tables:
        if p * p > n_max:
            break
        for j in range(p * p, n_max + 1, p):
            if spf[j] == j:
                spf[j] = p
    c = [Fraction(0)] * (n_max + 1)
    c[1] = Fraction(1)
    for n in range(2, n_max + 1):
        p = spf[n]
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        c[n] = c[m] * tables[p][k]
    return c[1:]


def dirichlet_product(tau: GlobalTauData, choice: PacketChoice, d: int, n_max: int, bound: int | None = None) -> list[Fraction]:
    """Same coefficients by multiplying the per-prime Dirichlet series for p <= bound one at a time."""
    tables = _local_tables(tau, choice, d, n_max)
    bound = n_max if bound is None else bound
    acc = [Fraction(0)] * (n_max + 1)
    acc[1] = Fraction(1)
    for p, ser in tables.items():
        if p > bound:
            break
        # acc is supported on integers prime to p, so the update can run in place
        for n in range(1, n_max // p + 1):
            if n % p == 0 or acc[n] == 0:
                continue
            pk, k = p, 1
            while n * pk <= n_max:
                acc[n * pk] += acc[n] * ser[k]
                pk *= p
                k += 1
    return acc[1:]
