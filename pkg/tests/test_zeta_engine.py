from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skbessel.laurent import LaurentPoly, RationalFn, diameter_and_sign, projectively_equal
from skbessel.localfield import classify_case
from skbessel.zeta_engine import (
    ZetaPolynomial,
    ZetaProfile,
    check_functional_equation,
    coefficients,
    delta_lambda,
    f_lambda,
    flat_zstar,
    kappa_zstar,
    oldform_basis_rank,
    ps_zeta,
    raise_level,
    recursion_R_residuals,
    recursion_U_residuals,
    solve_recursion_K1,
    solve_recursion_R,
    solve_recursion_U,
    split_zeta_identity,
    zeta_polynomial,
)

ONE = LaurentPoly.const(1)
X = LaurentPoly.monomial(1)
rat = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def xp(q):
    return LaurentPoly.monomial(1, F(1, q))


def test_recursion_U_examples():
    for q in (2, 3, 5):
        Z = solve_recursion_U(q, q * q + q, 1, F(1, q))
        assert projectively_equal(Z, RationalFn(ONE, ONE - X))
        assert solve_recursion_U(q, 0, 1, 0) == RationalFn(ONE, LaurentPoly({0: 1, 2: F(1, q)}))
        assert solve_recursion_U(q, 7, 0, 0).is_zero()


@settings(max_examples=50)
@given(rat, rat, rat, st.sampled_from([2, 3, 5]))
def test_recursion_U_closed_form(lam, c0, c1, q):
    Z = solve_recursion_U(q, lam, c0, c1)
    assert all(r == 0 for r in recursion_U_residuals(Z, q, lam))
    if not Z.is_zero():
        c = coefficients(Z, q, 1)
        assert c == [c0, c1]


def test_recursion_K1():
    q, lam, kappa = F(3), F(5), -1
    Z = solve_recursion_K1(q, lam, kappa, 1)
    c = coefficients(Z, q, 10)
    assert all(lam * c[i] == q**3 * c[i + 1] + q * kappa * c[i] for i in range(10))


def test_recursion_R_examples():
    for q in (2, 3, 5):
        q = F(q)
        Z, Zs = solve_recursion_R(q, 2 * q * q, 1, 1 / q, 1, 1 / q)
        assert projectively_equal(Z, RationalFn(ONE, ONE - X))
        assert projectively_equal(Zs, RationalFn(ONE, (ONE - X) * X))
        assert Zs == Z * RationalFn(LaurentPoly.monomial(-1, 1 / q))
        Z, Zs = solve_recursion_R(q, 2 * q * q, 1, 1 / q**2, q, 1 / q)
        assert projectively_equal(Z, RationalFn(ONE, ONE - xp(q)))
        assert projectively_equal(Zs, RationalFn(ONE, (ONE - xp(q)) * X))
    Z, Zs = solve_recursion_R(3, 1, 0, 0, 0, 0)
    assert Z.is_zero() and Zs.is_zero()


@settings(max_examples=50)
@given(rat, rat, rat, rat, rat, st.sampled_from([2, 3, 5]))
def test_recursion_R_closed_form(lam, c0, c1, cm1, cs0, q):
    Z, Zs = solve_recursion_R(q, lam, c0, c1, cm1, cs0)
    r1, r2 = recursion_R_residuals(Z, Zs, q, lam)
    assert all(v == 0 for v in r1 + r2)
    # numerators over Delta and X Delta have degree at most 3
    D = delta_lambda(q, lam)
    assert D.max_exp() == 4
    Q = Z * RationalFn(D)
    R = Zs * RationalFn(D * X)
    for r in (Q, R):
        if not r.is_zero():
            assert r.is_laurent() and r.as_laurent().max_exp() <= 3 and r.as_laurent().min_exp() >= 0


def test_f_lambda_shape():
    assert f_lambda(3, 9) == LaurentPoly({0: 1, 1: -1, 2: F(1, 3)})


def test_ps_zeta_complete():
    ctx = classify_case(3, "U-i")
    Z = RationalFn(ONE, ONE - X)
    prof = ZetaProfile(Z, "Complete", 1)
    zeta = RationalFn(ONE, ONE - X * X * F(1, 9))
    assert ps_zeta(prof, "m", ctx) == zeta * Z
    assert ps_zeta(prof, 2, ctx) == zeta * Z * RationalFn(ONE + X * X) * RationalFn(F(1, 10))


def test_ps_zeta_kappa_and_flat():
    ctx = classify_case(3, "U-i")
    for kappa in (1, -1):
        prof = ZetaProfile(RationalFn(ONE), "Plain", 1, kappa=kappa)
        got = ps_zeta(prof, "m+1", ctx)
        assert got == RationalFn(F(1, 10), ONE - xp(3) * kappa)
        assert prof.Zstar is None and kappa_zstar(prof.Z, kappa, 3) == RationalFn(LaurentPoly.monomial(-1, F(kappa, 3)))
    flat = ZetaProfile(RationalFn(ONE), "Flat", 2, Zstar=flat_zstar(RationalFn(ONE), 3, 2))
    assert ps_zeta(flat, "m", ctx).is_zero()
    assert projectively_equal(ps_zeta(flat, "m+1", ctx), RationalFn(ONE))
    with pytest.raises(ValueError):
        ps_zeta(ZetaProfile(RationalFn(ONE), "Sharp", 1), "m", classify_case(3, "R-i"))
    with pytest.raises(ValueError):
        ps_zeta(flat, 5, ctx)


def test_profile_pole_bounds():
    with pytest.raises(ValueError):
        ZetaProfile(RationalFn(LaurentPoly.monomial(-1)), "Plain", 1)
    with pytest.raises(ValueError):
        ZetaProfile(RationalFn(ONE), "Flat", 1, Zstar=RationalFn(LaurentPoly.monomial(-1)))
    ZetaProfile(RationalFn(ONE), "Plain", 1, Zstar=RationalFn(LaurentPoly.monomial(-1)))


def test_zeta_polynomial_examples():
    L = RationalFn(ONE, ONE - X)
    assert zeta_polynomial(L, L, 0).P == ONE
    assert zeta_polynomial(L * RationalFn(ONE + X * X), L, 0).P == ONE + X * X
    assert zeta_polynomial(L * RationalFn(LaurentPoly.monomial(-1)), L, 0).P == LaurentPoly.monomial(-1)
    with pytest.raises(ValueError):
        zeta_polynomial(L, RationalFn(ONE), 0)


def test_functional_equation_examples():
    assert check_functional_equation(ZetaPolynomial(ONE, 1), 1, 1, 2, 2)
    assert check_functional_equation(ZetaPolynomial(ONE - X, 1), -1, 1, 0, 1)
    assert check_functional_equation(ZetaPolynomial(ONE + X * X, 2), 1, 1, 2, 2)
    assert not check_functional_equation(ZetaPolynomial(ONE + X, 1), 1, -1, 0, 1)


def test_raise_level_examples():
    P = ZetaPolynomial(ONE, 0)
    e = raise_level(P, "e", 1, 3)
    assert e.P == LaurentPoly({0: 3, 1: 3}) and e.index_m == 1
    eta = raise_level(P, "eta", 2, 3)
    assert eta.P == LaurentPoly.monomial(2, 9) and eta.index_m == 2
    a = raise_level(raise_level(P, "e", 2, 3), "eta", 2, 3)
    b = raise_level(raise_level(P, "eta", 2, 3), "e", 2, 3)
    assert a == b and a.index_m == 3
    with pytest.raises(ValueError):
        raise_level(P, "x", 1, 3)


@pytest.mark.parametrize("f", [1, 2])
def test_oldform_rank(f):
    for k in range(9):
        assert oldform_basis_rank(0, k, f, 3) == k // 2 + 1


@settings(max_examples=100)
@given(st.lists(rat, min_size=1, max_size=5), st.sampled_from([1, -1]), st.integers(-3, 3))
def test_sign_polynomials_round_trip(half, eps, shift):
    # build P with X^dia P(1/X) = eps P, then check both the sign and the FE
    n = len(half)
    coeffs = {}
    for i, c in enumerate(half):
        coeffs[i] = coeffs.get(i, 0) + c
        coeffs[2 * n - 1 - i] = coeffs.get(2 * n - 1 - i, 0) + eps * c
    P = LaurentPoly(coeffs)
    if P.is_zero():
        return
    P = P.shift(shift)
    dia, sign = diameter_and_sign(P)
    assert sign == eps
    # P(1/X) = eps X^(-dia) P(X) is the FE with n_pi - f m = -dia
    assert check_functional_equation(ZetaPolynomial(P, 0), eps, 1, -dia, 1)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_split_identity(q):
    xq = xp(q)
    shapes = [RationalFn(ONE), RationalFn(ONE, ONE + xq), RationalFn(LaurentPoly())]
    for a in (F(1), F(2), F(1, 3)):
        shapes.append(RationalFn(ONE, (ONE - X * a) * (ONE - xq * (1 / a))))
    for L in shapes:
        assert split_zeta_identity(L, q, 50)
    # the transform is formal, so any power series passes
    assert split_zeta_identity(RationalFn(ONE + X), q, 10)
