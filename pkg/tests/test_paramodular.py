import random

import pytest

from skbessel.localfield import classify_case
from skbessel.paramodular import (
    FLAVORS,
    GSp4Elem,
    ParamodularGroup,
    ParamodularSpec,
    classical_paramodular_member,
    coset_reps_em,
    decomposition_supported,
    embed_gamma,
    embed_split_pair,
    hecke_coset_reps,
    membership,
    special_element,
    verify_decomposition,
)
from skbessel.paramodular import galois_conjugate_gamma, torus_elem

U3 = classify_case(3, "U-i")
R3 = classify_case(3, "R-i")
S3 = classify_case(3, "Split")


def test_spec_admissibility():
    with pytest.raises(ValueError):
        ParamodularSpec(0, "Flat", U3)
    with pytest.raises(ValueError):
        ParamodularSpec(0, "Sharp", R3)
    with pytest.raises(ValueError):
        ParamodularSpec(1, "Plain", S3)
    ParamodularSpec(0, "Sharp", U3)
    assert ParamodularSpec(2, "Flat", U3).label == "K^flat_5"


def test_special_elements():
    assert embed_gamma(U3, (((1, 0), (0, 0)), ((0, 0), (1, 0)))) == GSp4Elem.identity()
    w0 = special_element("weyl", U3, 0)
    assert w0.rows() == [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
    assert special_element("hat_wpi", U3, 1).rows() == [[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    for ctx in (U3, R3):
        for m in range(3):
            w = special_element("weyl", ctx, m)
            assert w.is_symplectic() and w.mu == 1
    with pytest.raises(ValueError):
        special_element("s_p", U3)
    with pytest.raises(ValueError):
        special_element("weyl_prime", R3, 1)
    with pytest.raises(ValueError):
        special_element("u_alpha", R3)


def test_torus_embedding():
    t = torus_elem(U3, (2, 1))
    assert t.mu == U3.norm((2, 1))
    assert t.is_symplectic()
    assert t.B == (0, 0, 0, 0) and t.C == (0, 0, 0, 0)


def test_atkin_lehner_conjugates_by_galois():
    iota = special_element("atkin_lehner", U3)
    # det = N(1 + sigma) - 3 lies in F
    g = (((1, 1), (1, 0)), ((3, 0), (1, -1)))
    a = embed_gamma(U3, g)
    assert a.is_symplectic()
    assert iota * a * iota.inverse() == embed_gamma(U3, galois_conjugate_gamma(g))


def test_split_pair_embedding():
    g = embed_split_pair((1, 2, 0, 1), (3, 1, 2, 1))
    assert g.is_symplectic()
    with pytest.raises(ValueError):
        embed_split_pair((1, 0, 0, 1), (2, 0, 0, 1))


@pytest.mark.parametrize("ctx", [U3, R3], ids=lambda c: c.case)
@pytest.mark.parametrize("flavor", FLAVORS)
@pytest.mark.parametrize("m", [1, 2])
def test_group_closure_and_normalizers(ctx, flavor, m):
    spec = ParamodularSpec(m, flavor, ctx)
    K = ParamodularGroup(spec)
    rng = random.Random(10 * m + FLAVORS.index(flavor))
    iota = special_element("atkin_lehner", ctx)
    for _ in range(40):
        a, b = K.random_element(rng, 2), K.random_element(rng, 2)
        assert a.is_symplectic()
        assert K.contains(a * b)
        assert K.contains(a.inverse())
        assert K.contains(iota * a * iota.inverse())
    if flavor == "Complete":
        assert membership(K.weyl, spec)


@pytest.mark.parametrize("ctx", [U3, R3], ids=lambda c: c.case)
def test_flavors_nest(ctx):
    # at a fixed principal level the groups shrink from Complete to Sharp
    rng = random.Random(5)
    Ks = [ParamodularGroup(ParamodularSpec(1, fl, ctx)) for fl in FLAVORS]
    for small, big in zip(Ks[1:], Ks):
        for _ in range(30):
            assert big.contains(small.random_element(rng, 2))
    assert not Ks[3].contains(Ks[0].weyl)


@pytest.mark.parametrize("flavor", ["Plain", "Sharp"])
def test_weyl_prime_normalizes(flavor):
    K = ParamodularGroup(ParamodularSpec(1, flavor, U3))
    w = special_element("weyl_prime", U3, 1)
    rng = random.Random(3)
    for _ in range(30):
        k = K.random_element(rng, 2)
        assert K.contains(w * k * w.inverse())


@pytest.mark.parametrize("m", [1, 2, 3])
def test_split_group_is_classical_paramodular(m):
    K = ParamodularGroup(ParamodularSpec(m, "Complete", S3))
    rng = random.Random(m)
    for _ in range(40):
        assert classical_paramodular_member(K.random_element(rng, 2), m, 3)


def test_hecke_cosets():
    minus = hecke_coset_reps(ParamodularSpec(0, "Sharp", U3), "-")
    assert len(minus.reps) == 27 and minus.verified["complete"]
    assert len(hecke_coset_reps(ParamodularSpec(1, "Sharp", R3), "-").reps) == 27
    for spec in (ParamodularSpec(1, "Plain", U3), ParamodularSpec(2, "Complete", R3)):
        assert len(hecke_coset_reps(spec, "+").reps) == 27
    with pytest.raises(ValueError):
        hecke_coset_reps(ParamodularSpec(1, "Complete", R3), "-")


def test_decomposition_small_sample():
    rep = verify_decomposition(ParamodularSpec(1, "Complete", U3), samples=200, seed=4)
    assert rep["supported"] and rep["failures"] == 0
    assert rep["cells"]["weyl"] > 0
    flat = verify_decomposition(ParamodularSpec(2, "Flat", R3), samples=200, seed=4)
    assert flat["failures"] == 0 and flat["cells"]["weyl"] == 0
    ident = verify_decomposition(ParamodularSpec(2, "Plain", U3), elements=[GSp4Elem.identity()])
    assert ident["cells"]["big"] == 1


def test_below_range_is_unsupported():
    assert not decomposition_supported(ParamodularSpec(1, "Complete", R3))
    assert not decomposition_supported(ParamodularSpec(1, "Flat", R3))
    assert not verify_decomposition(ParamodularSpec(1, "Flat", R3))["supported"]


@pytest.mark.parametrize(
    "ctx,m,count",
    [(U3, 1, 10), (R3, 1, 4), (S3, 1, 4), (classify_case(5, "Split"), 1, 6)],
    ids=["U-i", "R-i", "Split-3", "Split-5"],
)
def test_coset_counts(ctx, m, count):
    fam = coset_reps_em(ctx, m)
    assert len(fam.reps) == count
    assert fam.verified["complete"]


def test_coset_below_range_case_R():
    with pytest.raises(ValueError):
        coset_reps_em(R3, 0)
