import random
from itertools import product

import pytest

from skbessel.localfield import classify_case, residue_reps
from skbessel.orders import (
    H,
    ONE,
    build_Lm,
    build_R,
    build_R_varrho,
    build_Rm,
    count_unit_quotient,
    dual_lattice,
    e_mat,
    hankel_part,
    m_det,
    m_mul,
    m_scale,
    m_star,
    normalizes,
    partition_units,
    trace_pairing,
    unit_quotient_reps,
    varrho_mat,
    verify_unit_reps,
)
from skbessel.padic_linalg import Q, vp

U3 = classify_case(3, "U-i")
R3 = classify_case(3, "R-i")
CASES = [U3, R3, classify_case(5, "U-i"), classify_case(2, "U-ii"), classify_case(2, "R-ii")]


def _entrywise(x, pattern, p):
    return all(v == 0 or vp(v, p) >= k for v, k in zip(x, pattern))


def test_R_is_M2_of_o_in_case_U_i():
    R = build_R(U3)
    rng = random.Random(1)
    for _ in range(300):
        x = tuple(Q(rng.randrange(-20, 20), 3 ** rng.randrange(0, 2)) for _ in range(4))
        assert R.contains(x) == _entrywise(x, (0, 0, 0, 0), 3)


def test_R_varrho_is_upper_triangular_mod_p_in_case_R_i():
    R1 = build_Rm(R3, 1)
    assert R1 == build_R_varrho(R3)
    rng = random.Random(2)
    for _ in range(300):
        x = tuple(Q(rng.randrange(-20, 20), 3 ** rng.randrange(0, 2)) for _ in range(4))
        assert R1.contains(x) == _entrywise(x, (0, 1, 0, 0), 3)


@pytest.mark.parametrize("ctx", CASES, ids=lambda c: f"{c.p}-{c.case}")
def test_level_zero_is_R_and_orders_close(ctx):
    assert build_Rm(ctx, 0) == build_R(ctx)
    for m in range(4):
        L = build_Rm(ctx, m)
        assert L.is_order()
        assert L.contains(ONE)
        for a, b in product(L.basis, repeat=2):
            assert L.contains(m_mul(a, b))


def test_star_is_adjugate():
    x = (Q(2), Q(5), Q(-1, 3), Q(7))
    xs = m_star(x)
    d = m_det(x)
    assert m_mul(x, xs) == (d, 0, 0, d)


def test_hankel_parts():
    assert hankel_part(build_R(U3)).basis == [(1, 0, 0, 1), (0, 2, 1, 0), (0, 1, 0, 0)]
    # varrho R with varrho = 3 in case U
    assert hankel_part(build_R(U3).scaled(3)) == hankel_part(build_R(U3)).scaled(3)
    # R^varrho in case R: O plus p h
    hp = hankel_part(build_Rm(R3, 1))
    assert hp.contains(ONE) and hp.contains(m_scale(3, H)) and not hp.contains(H)


def test_h_between_orders_case_R():
    R1 = build_Rm(R3, 1)
    assert not R1.contains(H)
    assert R1.contains(m_mul(varrho_mat(R3, 1), H))


@pytest.mark.parametrize("ctx", [U3, R3], ids=lambda c: c.case)
def test_filtration_and_index(ctx):
    for m in range(5):
        big, small = build_Rm(ctx, m), build_Rm(ctx, m + 1)
        assert small <= big
        # additive index is q^f per step
        assert small.index_in(big) == ctx.q**ctx.f


@pytest.mark.parametrize("ctx", [U3, R3], ids=lambda c: c.case)
def test_units_of_E_normalize_Rm(ctx):
    units = [z for z in residue_reps(ctx, 1) if vp(ctx.norm(z), ctx.p) == 0]
    for m in range(4):
        for z in units:
            assert normalizes(ctx, e_mat(ctx, z), build_Rm(ctx, m))


def test_unit_quotient_examples():
    assert len(unit_quotient_reps(U3, 1)) == 9
    assert len(unit_quotient_reps(R3, 2)) == 3
    low = unit_quotient_reps(U3, 0)
    assert all(vp(m_det(x), 3) == 0 for x in low)
    assert verify_unit_reps(U3, 0)["complete"]
    with pytest.raises(ValueError):
        unit_quotient_reps(R3, 0)


def test_unit_quotient_partition_is_uniform():
    sizes = partition_units(U3, 1)
    assert len(sizes) == 9 and len(set(sizes)) == 1


@pytest.mark.parametrize("ctx", [U3, R3], ids=lambda c: c.case)
def test_unit_counts(ctx):
    for m in range(ctx.m0, 4):
        assert count_unit_quotient(ctx, m) == ctx.q**ctx.f
        assert verify_unit_reps(ctx, m)["complete"]


def test_dual_lattices():
    R = build_R(U3)
    assert dual_lattice(R) == R
    # the full trace pairing doubles the form, so the dual halves
    assert dual_lattice(R, trace_pairing) == R.scaled(Q(1, 2))
    first, second = build_Lm(U3, 0).summands()
    assert first == dual_lattice(R) and second == R
    for m in (1, 2):
        first, _ = build_Lm(U3, m).summands()
        assert first == dual_lattice(build_Rm(U3, m)).scaled(3 ** (2 * m))


def test_dual_index_ratio_is_pairing_independent():
    for m in (0, 1, 2):
        Rm = build_Rm(R3, m)
        a = Rm.index_in(dual_lattice(Rm))
        b = dual_lattice(Rm, trace_pairing).index_in(dual_lattice(Rm))
        # 2 is a unit at p = 3, so both normalizations give the same dual
        assert b == 1
        assert build_Rm(R3, m + 1).index_in(dual_lattice(build_Rm(R3, m + 1))) == a * R3.q ** (2 * R3.f)
