"""Local configurations shared by the classification tests."""

from fractions import Fraction as F

from skbessel.localfield import classify_case
from skbessel.sk_factors import LocalSKData, TauLocalType

PRIMES = (2, 3, 5)


def fields(p):
    if p == 2:
        return [classify_case(2, c) for c in ("Split", "U-ii", "R-ii")]
    return [classify_case(p, c) for c in ("Split", "U-i", "R-i")]


def taus(E):
    out = [TauLocalType.unramified(F(2)), TauLocalType.unramified(F(1, 3)), TauLocalType.steinberg()]
    for n in (2, 4):
        for eps in (1, -1):
            out.append(TauLocalType.ramified_principal(n, eps))
    for n in (2, 3, 4, 5):
        for eps in (1, -1):
            out.append(TauLocalType.supercuspidal(n, eps))
    if not E.is_split:
        if E.ramified:
            # conductor of chi St is twice that of the ramified quadratic character
            n = 2 * E.diff_exp
            out += [TauLocalType.twisted_steinberg(E, n, eps) for eps in (1, -1)]
        else:
            out.append(TauLocalType.twisted_steinberg(E))
    return out


def all_configurations():
    """Every (p, E, tau, member, dichotomy bit) combination under test."""
    out = []
    for p in PRIMES:
        for E in fields(p):
            for tau in taus(E):
                members = ["SK_tau", "SK_tauJL"] if tau.discrete else ["SK_tau"]
                for member in members:
                    bits = [None]
                    if E.family == "R" and tau.kind == "Supercuspidal":
                        bits = [True, False]
                    elif E.family == "U" and tau.kind == "Supercuspidal":
                        bits = [tau.n_tau % 2 == 0]
                    for bit in bits:
                        out.append(LocalSKData(tau, member, E, bit))
    return out


def label(data):
    t = data.tau
    return f"{data.bessel.p}:{data.bessel.case}:{t.kind}:{t.n_tau}:{t.eps_tau}:{data.member}:{data.tau_carries_torus_functional}"
