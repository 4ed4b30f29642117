"""Command line entry point: ``skbessel <command> ...`` printing JSON.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .global_data import (
    GlobalTauData,
    PacketChoice,
    ParityError,
    arch_factor,
    finite_root_sign,
    fourier_dirichlet,
    global_root_number,
    primes_upto,
)
from .laurent import format_laurent
from .localfield import CASES, classify_case
from .paramodular import FLAVORS, ParamodularSpec, coset_reps_em, decomposition_supported, verify_decomposition
from .sk_factors import (
    LocalSKData,
    TauLocalType,
    classify,
    newform_profile,
    profile_functional_equations,
)

SCHEMA_VERSION = 1
TAU_NAMES = {
    "unramified": "UnramifiedPrincipal",
    "ramified-ps": "RamifiedPrincipal",
    "steinberg": "Steinberg",
    "twisted-steinberg": "TwistedSteinberg",
    "sc": "Supercuspidal",
}
MEMBER_NAMES = {"sk": "SK_tau", "jl": "SK_tauJL"}


class UsageError(Exception):
    pass


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("sign must be + or -")


def _local_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--p", type=int, required=True)
    ap.add_argument("--case", choices=CASES, required=True)
    ap.add_argument("--tau", choices=sorted(TAU_NAMES), required=True)
    ap.add_argument("--member", choices=sorted(MEMBER_NAMES), default="sk")
    ap.add_argument("--a", type=_frac, help="Satake parameter of an unramified tau")
    ap.add_argument("--n-tau", type=int)
    ap.add_argument("--eps-tau", type=_sign)
    ap.add_argument(
        "--dichotomy",
        choices=("tau", "jl"),
        help="which of tau, tau^JL carries the torus-invariant functional (ramified E, supercuspidal tau)",
    )
    ap.add_argument("--no-dyadic-gamma", action="store_true", help="drop the dyadic gamma-factor assumption")


def _tau_from_args(args, E) -> TauLocalType:
    kind = TAU_NAMES[args.tau]
    if kind == "UnramifiedPrincipal":
        if args.a is None:
            raise UsageError("--a is required for an unramified tau")
        return TauLocalType.unramified(args.a)
    if kind == "Steinberg":
        return TauLocalType.steinberg()
    if kind == "TwistedSteinberg":
        if E.is_split:
            raise ValueError("the twisting character of E is trivial in the split case")
        return TauLocalType.twisted_steinberg(E, args.n_tau, args.eps_tau)
    if args.n_tau is None:
        raise UsageError("--n-tau is required")
    eps = args.eps_tau if args.eps_tau is not None else 1
    if kind == "RamifiedPrincipal":
        return TauLocalType.ramified_principal(args.n_tau, eps)
    return TauLocalType.supercuspidal(args.n_tau, eps)


def _local_data(args) -> LocalSKData:
    E = classify_case(args.p, args.case)
    bit = None if args.dichotomy is None else args.dichotomy == "tau"
    return LocalSKData(_tau_from_args(args, E), MEMBER_NAMES[args.member], E, bit, not args.no_dyadic_gamma)


def cmd_factor(args) -> dict:
    return classify(_local_data(args))


def cmd_newform(args) -> dict:
    data = _local_data(args)
    nf = newform_profile(data)
    fe = profile_functional_equations(nf, data)
    return {
        "strict_space": nf.tag,
        "M_pi": nf.M_pi,
        "eps_pi": nf.eps_pi,
        "N_pi": nf.N_pi,
        "profile": nf.profile.to_json(),
        "ps_index": nf.ps_index,
        "ps_zeta": {"num": format_laurent(nf.ps_zeta.num), "den": format_laurent(nf.ps_zeta.den)},
        "zeta_polynomial": format_laurent(nf.P.P),
        "functional_equation": {str(k): v for k, v in fe.items()},
    }


def cmd_group(args) -> dict:
    spec = ParamodularSpec(args.m, args.flavor, classify_case(args.p, args.case))
    out = {"group": spec.label, "p": args.p, "case": args.case}
    if decomposition_supported(spec):
        rep = verify_decomposition(spec, samples=args.samples, seed=args.seed)
        out.update({k: v for k, v in rep.items() if isinstance(v, (int, float, str, bool, dict, list))})
    else:
        out["decomposition"] = "unsupported"
    return out


def cmd_cosets(args) -> dict:
    ctx = classify_case(args.p, args.case)
    m = args.m if args.m is not None else ctx.m0 - 1
    fam = coset_reps_em(ctx, m, seed=args.seed)
    return {"parent": fam.parent, "sub": fam.sub, **fam.verified}


def _parse_local_spec(text: str) -> tuple[int, TauLocalType]:
    # p:steinberg | p:sc:n:eps | p:ramified-ps:n:eps | p:unramified:a
    parts = text.split(":")
    try:
        p = int(parts[0])
        kind = parts[1]
        if kind == "steinberg":
            return p, TauLocalType.steinberg()
        if kind == "unramified":
            return p, TauLocalType.unramified(Fraction(parts[2]))
        if kind in ("sc", "ramified-ps"):
            n, eps = int(parts[2]), _sign(parts[3])
            make = TauLocalType.supercuspidal if kind == "sc" else TauLocalType.ramified_principal
            return p, make(n, eps)
    except (IndexError, ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(f"bad local type {text!r}: {exc}") from exc
    raise UsageError(f"bad local type {text!r}")


def _global_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--kappa", type=int, default=1)
    ap.add_argument("--local", action="append", default=[], metavar="SPEC", help="p:steinberg, p:sc:n:eps, p:ramified-ps:n:eps or p:unramified:a")
    ap.add_argument("--default-satake", type=_frac, help="Satake parameter for every prime not given by --local")
    ap.add_argument("--S", default="", help="comma separated primes where the JL member is taken")


def _global_data(args, n_max: int = 0) -> tuple[GlobalTauData, PacketChoice]:
    local = dict(_parse_local_spec(s) for s in args.local)
    if args.default_satake is not None:
        for p in primes_upto(max(n_max, max(local, default=2))):
            local.setdefault(p, TauLocalType.unramified(args.default_satake))
    S = frozenset(int(x) for x in args.S.split(",") if x.strip())
    return GlobalTauData(local, args.kappa), PacketChoice(S, getattr(args, "d", None))


def cmd_euler(args):
    tau, choice = _global_data(args, args.n_max)
    c = fourier_dirichlet(tau, choice, args.d, args.n_max)
    if args.format == "csv":
        return "\n".join(f"{n},{x}" for n, x in enumerate(c, start=1))
    return {"d": args.d, "kappa": args.kappa, "S": sorted(choice.S), "c": [str(x) for x in c], "normalization": "c_n = n^kappa a_n, a_n in X_p = p^(-s+1/2)"}


def cmd_global_root(args) -> dict:
    tau, choice = _global_data(args)
    return {
        "finite_sign": finite_root_sign(tau, choice),
        "arch": arch_factor(args.kappa).to_json(),
        "eps_tau": tau.root_number,
        "global_root": global_root_number(tau, choice),
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skbessel", description="Bessel newforms of Saito-Kurokawa packets")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("factor", cmd_factor, "local classification"), ("newform", cmd_newform, "newform zetas")):
        sp = sub.add_parser(name, help=helptext)
        _local_args(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("group", help="decomposition check of a paramodular group")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--case", choices=CASES, required=True)
    sp.add_argument("--flavor", choices=FLAVORS, default="Complete")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("cosets", help="coset representatives for the level raising operator")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--case", choices=CASES, required=True)
    sp.add_argument("--m", type=int, help="level of the smaller group (default: the lowest one defined)")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_cosets)

    sp = sub.add_parser("euler", help="Dirichlet coefficients of the radial Fourier coefficients")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    _global_args(sp)
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("global-root", help="root number of the cuspidal packet member")
    _global_args(sp)
    sp.set_defaults(func=cmd_global_root)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError, ParityError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"schema": SCHEMA_VERSION, "error": msg}))
        return 1
    if isinstance(out, str):
        print(out)
    else:
        print(json.dumps({"schema": SCHEMA_VERSION, **out}, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
