import json
import subprocess
import sys
from fractions import Fraction as F
from math import gcd

import pytest

from skbessel.cli import main
from skbessel.global_data import (
    GlobalTauData,
    PacketChoice,
    ParityError,
    arch_factor,
    chi_E,
    dirichlet_product,
    finite_root_sign,
    fourier_dirichlet,
    fundamental_discriminant,
    global_root_number,
    local_euler_series,
    match_field,
    primes_upto,
)
from skbessel.sk_factors import TauLocalType

ST = TauLocalType.steinberg()


def unramified_tau(n_max, a=F(1), kappa=1, extra=None):
    local = {p: TauLocalType.unramified(a) for p in primes_upto(n_max)}
    local.update(extra or {})
    return GlobalTauData(local, kappa)


def test_arch_factor_examples():
    a1 = arch_factor(1)
    assert a1.gamma_shifts == (F(1, 2), F(1, 2)) and a1.fe_sign == 1
    a2 = arch_factor(2)
    assert a2.gamma_shifts == (F(1, 2), F(3, 2)) and a2.fe_sign == -1
    assert arch_factor(10).fe_sign == -1
    for k in range(1, 9):
        assert arch_factor(k).fe_sign == arch_factor(k + 2).fe_sign
    with pytest.raises(ValueError):
        arch_factor(0)


def test_discriminants_and_characters():
    assert fundamental_discriminant(1) == -4
    assert fundamental_discriminant(3) == -3
    assert fundamental_discriminant(5) == -20
    with pytest.raises(ValueError):
        fundamental_discriminant(4)
    assert chi_E(1, 5) == 1 and chi_E(1, 3) == -1 and chi_E(1, 2) == 0
    assert PacketChoice(d=1).local_field(2).case == "R-ii"
    assert PacketChoice(d=3).local_field(2).case == "U-ii"
    assert PacketChoice(d=1).local_field(5).case == "Split"


def test_global_data_validation():
    with pytest.raises(ValueError):
        GlobalTauData({4: ST}, 1)
    with pytest.raises(ValueError):
        GlobalTauData({11: ST}, 1, level_N=12)
    GlobalTauData({11: ST}, 1, level_N=11)
    with pytest.raises(ParityError):
        GlobalTauData({11: ST}, 1, global_root=-1)
    with pytest.raises(KeyError):
        GlobalTauData({11: ST}, 1).tau_at(3)


def test_match_field_examples():
    tau = GlobalTauData({2: TauLocalType.unramified(1)}, 1)
    assert match_field(PacketChoice(), tau, {})
    tau = GlobalTauData({11: ST}, 1)
    assert match_field(PacketChoice(frozenset({11})), tau, {11: (1, 1)})
    assert not match_field(PacketChoice(), tau, {11: (1, 1)})
    with pytest.raises(ValueError):
        match_field(PacketChoice(), tau, {})


def test_root_number_examples():
    # weight 2 kappa = 2, one Steinberg prime: eps(1/2, tau) = +1, so |S| must be odd
    tau = GlobalTauData({11: ST}, 1)
    choice = PacketChoice(frozenset({11}))
    assert finite_root_sign(tau, choice) == 1
    assert global_root_number(tau, choice) == 1
    with pytest.raises(ParityError):
        global_root_number(tau, PacketChoice())
    two = GlobalTauData({5: ST, 7: ST}, 2)
    assert finite_root_sign(two, PacketChoice(frozenset({5, 7}))) == 1
    assert finite_root_sign(unramified_tau(20), PacketChoice()) == 1
    with pytest.raises(ValueError):
        PacketChoice(frozenset({3})).validate(tau)


def test_root_number_order_independent():
    items = [(5, ST), (7, ST), (11, ST), (3, TauLocalType.unramified(2))]
    a = GlobalTauData(dict(items), 2)
    b = GlobalTauData(dict(reversed(items)), 2)
    # eps(1/2, tau) = (+1)(-1)^3, so |S| is even
    S = frozenset({5, 7})
    assert global_root_number(a, PacketChoice(S)) == global_root_number(b, PacketChoice(S))


def test_local_series_prime_coefficient():
    # unramified a_p, chi(p) = 1, p not in S: d_1 = chi/p + (a + 1/(a p)) + 1 in X_p
    p, a = 5, F(2)
    d = local_euler_series(TauLocalType.unramified(a), p, 1, False, 3)
    assert d[0] == 1
    assert d[1] == F(1, p) + a + 1 / (a * p) + 1


def test_fourier_dirichlet_basic():
    n_max = 200
    tau = unramified_tau(n_max, F(2), kappa=2, extra={11: ST})
    choice = PacketChoice(frozenset({11}))
    c = fourier_dirichlet(tau, choice, 1, n_max)
    assert c[0] == 1
    for m in range(1, 30):
        for n in range(1, 30):
            if m * n <= n_max and gcd(m, n) == 1:
                assert c[m * n - 1] == c[m - 1] * c[n - 1]
    assert dirichlet_product(tau, choice, 1, n_max) == c
    with pytest.raises(ValueError):
        fourier_dirichlet(tau, choice, 1, n_max, nonvanishing=False)
    assert fourier_dirichlet(tau, choice, 1, 0) == []


def test_fourier_dirichlet_needs_all_primes():
    tau = GlobalTauData({2: TauLocalType.unramified(1)}, 1)
    with pytest.raises(KeyError):
        fourier_dirichlet(tau, PacketChoice(), 1, 10)


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_cli_factor(capsys):
    rc, out, _ = run(["factor", "--p", "3", "--case", "U-i", "--tau", "steinberg", "--member", "jl"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["schema"] == 1 and data["N_pi"] == 2 and data["exists"] is True
    rc, out, _ = run(["factor", "--p", "3", "--case", "U-i", "--tau", "sc", "--n-tau", "3", "--member", "sk"], capsys)
    assert rc == 0 and json.loads(out)["exists"] is False


def test_cli_newform_and_cosets(capsys):
    rc, out, _ = run(["newform", "--p", "5", "--case", "R-i", "--tau", "unramified", "--a", "3"], capsys)
    data = json.loads(out)
    assert rc == 0 and all(data["functional_equation"].values())
    rc, out, _ = run(["cosets", "--p", "3", "--case", "R-i", "--m", "1"], capsys)
    data = json.loads(out)
    assert rc == 0 and data["count"] == 4 and data["complete"]
    rc, out, _ = run(["group", "--p", "3", "--case", "U-i", "--m", "1", "--samples", "50"], capsys)
    data = json.loads(out)
    assert rc == 0 and data["failures"] == 0


def test_cli_euler(capsys):
    rc, out, _ = run(["euler", "--d", "1", "--n-max", "10", "--default-satake", "1"], capsys)
    data = json.loads(out)
    assert rc == 0 and data["c"][0] == "1" and len(data["c"]) == 10
    rc, out, _ = run(["euler", "--d", "1", "--n-max", "4", "--default-satake", "1", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "1,1"


def test_cli_errors(capsys):
    rc, out, _ = run(["global-root", "--local", "11:steinberg"], capsys)
    assert rc == 1 and "error" in json.loads(out)
    rc, _, err = run(["factor", "--p", "3", "--case", "U-i", "--tau", "steinberg", "--bogus"], capsys)
    assert rc == 2 and "usage" in err
    rc, _, err = run(["factor", "--p", "3", "--case", "U-i", "--tau", "unramified"], capsys)
    assert rc == 2 and "--a" in err
    rc, _, _ = run(["euler", "--d", "1", "--n-max", "10"], capsys)
    assert rc == 1
    rc, _, _ = run(["global-root", "--local", "11:nonsense"], capsys)
    assert rc == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "skbessel", "global-root", "--local", "11:steinberg", "--S", "11"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["global_root"] == 1
