"""Orders of M_2(F) attached to the quadratic algebra E.

A 2x2 matrix ``[[a, b], [c, d]]`` is stored as the tuple ``(a, b, c, d)`` of
Fractions.  E sits inside M_2(F) as ``x + y*sigma = [[x, e*y], [y, x]]``.
Lattices are Z_(p)-spans of such 4-vectors; membership is exact.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .localfield import QuadExtData, residue_reps
from .padic_linalg import Q, Lattice, mat_inverse, mod_pk, vp

__all__ = [
    "Mat2",
    "PadicMat2",
    "Lattice2",
    "ONE",
    "H",
    "IOTA",
    "e_mat",
    "sigma_mat",
    "varrho_mat",
    "m_mul",
    "m_add",
    "m_sub",
    "m_scale",
    "m_det",
    "m_star",
    "m_inv",
    "m_trace",
    "is_hankel",
    "build_R",
    "build_Rm",
    "build_R_varrho",
    "hankel_part",
    "unit_quotient_reps",
    "count_unit_quotient",
    "dual_lattice",
    "build_Lm",
]

Mat2 = tuple  # (a, b, c, d)

ONE: Mat2 = (Q(1), Q(0), Q(0), Q(1))
ZERO: Mat2 = (Q(0),) * 4
H: Mat2 = (Q(0), Q(1), Q(0), Q(0))
IOTA: Mat2 = (Q(1), Q(0), Q(0), Q(-1))


def mat(a, b, c, d) -> Mat2:
    return (Q(a), Q(b), Q(c), Q(d))


def m_mul(x: Mat2, y: Mat2) -> Mat2:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def m_add(x: Mat2, y: Mat2) -> Mat2:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def m_sub(x: Mat2, y: Mat2) -> Mat2:
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3])


def m_neg(x: Mat2) -> Mat2:
    return (-x[0], -x[1], -x[2], -x[3])


def m_scale(t, x: Mat2) -> Mat2:
    t = Q(t)
    return (t * x[0], t * x[1], t * x[2], t * x[3])


def m_det(x: Mat2) -> Fraction:
    return x[0] * x[3] - x[1] * x[2]


def m_trace(x: Mat2) -> Fraction:
    return x[0] + x[3]


def m_star(x: Mat2) -> Mat2:
    """Main involution (adjugate): x * x^* = det(x)."""
    return (x[3], -x[1], -x[2], x[0])


def m_transpose(x: Mat2) -> Mat2:
    return (x[0], x[2], x[1], x[3])


def m_inv(x: Mat2) -> Mat2:
    d = m_det(x)
    if d == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    return m_scale(1 / d, m_star(x))


def m_pow(x: Mat2, k: int) -> Mat2:
    if k < 0:
        return m_pow(m_inv(x), -k)
    out = ONE
    for _ in range(k):
        out = m_mul(out, x)
    return out


def is_hankel(x: Mat2) -> bool:
    """Membership in E + F*h, i.e. equal diagonal entries."""
    return x[0] == x[3]


def e_mat(ctx: QuadExtData, z) -> Mat2:
    """Matrix of ``z = (x, y)`` meaning ``x + y*sigma``."""
    x, y = Q(z[0]), Q(z[1])
    return (x, ctx.e * y, y, x)


def mat_to_e(ctx: QuadExtData, m: Mat2):
    """Inverse of :func:`e_mat`; raises if ``m`` is not in E."""
    x, y = m[0], m[2]
    if m[3] != x or m[1] != ctx.e * y:
        raise ValueError("matrix does not lie in E")
    return (x, y)


def sigma_mat(ctx: QuadExtData) -> Mat2:
    return e_mat(ctx, (0, 1))


def varrho_mat(ctx: QuadExtData, k: int = 1) -> Mat2:
    return e_mat(ctx, ctx.power(ctx.varrho, k))


def conj_mat(x: Mat2) -> Mat2:
    """Conjugation by iota; on E this is the Galois involution."""
    return (x[0], -x[1], -x[2], x[3])


class PadicMat2:
    """Thin wrapper around a 2x2 rational matrix with p-adic helpers."""

    __slots__ = ("m", "p")

    def __init__(self, m: Sequence, p: int):
        self.m = tuple(Q(v) for v in m)
        self.p = p

    def __mul__(self, other):
        return PadicMat2(m_mul(self.m, other.m), self.p)

    def __add__(self, other):
        return PadicMat2(m_add(self.m, other.m), self.p)

    def __sub__(self, other):
        return PadicMat2(m_sub(self.m, other.m), self.p)

    def __eq__(self, other):
        return isinstance(other, PadicMat2) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def det(self) -> Fraction:
        return m_det(self.m)

    def star(self) -> "PadicMat2":
        return PadicMat2(m_star(self.m), self.p)

    def valuations(self):
        return tuple(vp(v, self.p) for v in self.m)

    def to_strings(self) -> list[str]:
        return [entry_string(v, self.p) for v in self.m]

    def __repr__(self):
        return f"PadicMat2({[str(v) for v in self.m]})"


def entry_string(x, p: int) -> str:
    """``"p^v * u"`` with u an integer unit representative (``"0"`` for zero)."""
    x = Q(x)
    if x == 0:
        return "0"
    v = int(vp(x, p))
    u = x / Q(p) ** v
    if u.denominator != 1:
        return f"{p}^{v} * {u.numerator}/{u.denominator}"
    return f"{p}^{v} * {u.numerator}"


class Lattice2:
    """Z_(p)-lattice of 2x2 matrices with an exact membership predicate."""

    def __init__(self, gens: Iterable[Mat2], ctx: QuadExtData, name: str = ""):
        self.ctx = ctx
        self.name = name
        self._lat = Lattice([tuple(g) for g in gens], ctx.p)
        self.basis: list[Mat2] = [tuple(b) for b in self._lat.basis]

    @property
    def p(self) -> int:
        return self.ctx.p

    def contains(self, x: Mat2) -> bool:
        return self._lat.contains(x)

    __contains__ = contains

    def coords(self, x: Mat2):
        return self._lat.coords(x)

    def contains_lattice(self, other: "Lattice2") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __eq__(self, other):
        return isinstance(other, Lattice2) and self.contains_lattice(other) and other.contains_lattice(self)

    def __le__(self, other: "Lattice2") -> bool:
        return other.contains_lattice(self)

    def scaled(self, t) -> "Lattice2":
        return Lattice2([m_scale(t, b) for b in self.basis], self.ctx)

    def left_mul(self, x: Mat2) -> "Lattice2":
        return Lattice2([m_mul(x, b) for b in self.basis], self.ctx)

    def right_mul(self, x: Mat2) -> "Lattice2":
        return Lattice2([m_mul(b, x) for b in self.basis], self.ctx)

    def conjugate(self, x: Mat2) -> "Lattice2":
        xi = m_inv(x)
        return Lattice2([m_mul(m_mul(x, b), xi) for b in self.basis], self.ctx)

    def __add__(self, other: "Lattice2") -> "Lattice2":
        return Lattice2(self.basis + other.basis, self.ctx)

    def index_in(self, other: "Lattice2") -> int:
        return self._lat.index_in(other._lat)

    def quotient_box(self, sub: "Lattice2"):
        return self._lat.quotient_box(sub._lat)

    def is_order(self) -> bool:
        if not self.contains(ONE):
            return False
        return all(self.contains(m_mul(a, b)) for a in self.basis for b in self.basis)

    def is_unit(self, x: Mat2) -> bool:
        """x lies in the unit group of this order."""
        return self.contains(x) and vp(m_det(x), self.p) == 0

    def to_json(self) -> list[list[str]]:
        return [PadicMat2(b, self.p).to_strings() for b in self.basis]

    def __repr__(self):
        return f"Lattice2({self.name or 'lattice'}, basis={[tuple(map(str, b)) for b in self.basis]})"


def _O_basis(ctx: QuadExtData) -> list[Mat2]:
    return [ONE, e_mat(ctx, ctx.omega)]


def build_R(ctx: QuadExtData) -> Lattice2:
    """R = O + dv*O*h."""
    gens = _O_basis(ctx) + [m_scale(ctx.dv, m_mul(w, H)) for w in _O_basis(ctx)]
    return Lattice2(gens, ctx, "R")


def build_Rm(ctx: QuadExtData, m: int) -> Lattice2:
    """R_m = O + varrho^m R (an order for m >= 0)."""
    r = varrho_mat(ctx, m)
    gens = _O_basis(ctx) + [m_mul(r, b) for b in build_R(ctx).basis]
    return Lattice2(gens, ctx, f"R_{m}")


def build_R_varrho(ctx: QuadExtData) -> Lattice2:
    """R intersected with its conjugate by varrho."""
    R = build_R(ctx)
    Rc = R.conjugate(m_inv(varrho_mat(ctx)))
    return intersect(R, Rc)


def intersect(a: Lattice2, b: Lattice2) -> Lattice2:
    """Intersection of two full-rank lattices via duality-free elimination."""
    # x = sum s_i a_i = sum t_j b_j; solve in the 8-dim coefficient space
    p = a.p
    # kernel of [A; -B] over Z_(p): use the dual trick L1 ∩ L2 = (L1^# + L2^#)^#
    da, db = _standard_dual(a), _standard_dual(b)
    return _standard_dual(Lattice2(da.basis + db.basis, a.ctx))


def _standard_dual(L: Lattice2) -> Lattice2:
    """Dual under the entrywise dot product (only used for intersections)."""
    B = [list(b) for b in L.basis]
    inv = mat_inverse(B)
    # columns of inv^T ... rows of (B^{-1})^T
    gens = [tuple(inv[r][c] for r in range(4)) for c in range(4)]
    return Lattice2(gens, L.ctx)


class HankelLattice:
    """Rank-3 lattice inside the Hankel space E + F*h."""

    def __init__(self, parent: Lattice2):
        self.parent = parent
        self.ctx = parent.ctx
        p = parent.p
        phi = [b[0] - b[3] for b in parent.basis]
        nz = [(vp(c, p), i) for i, c in enumerate(phi) if c != 0]
        if not nz:
            vecs = list(parent.basis)
        else:
            _, i0 = min(nz)
            vecs = []
            for j, b in enumerate(parent.basis):
                if j == i0:
                    continue
                t = phi[j] / phi[i0]
                vecs.append(m_sub(b, m_scale(t, parent.basis[i0])))
        self.basis: list[Mat2] = vecs[:3] if len(vecs) >= 3 else vecs
        # echelon form in the coordinates (x, y, t) of x + y*sigma + t*h
        coords = [self._hcoords(v) for v in self.basis]
        self._lat = Lattice(coords, p)
        self.basis = [self._from_hcoords(c) for c in self._lat.basis]

    def _hcoords(self, v: Mat2):
        x, y = v[0], v[2]
        t = v[1] - self.ctx.e * y
        return (x, y, t)

    def _from_hcoords(self, c) -> Mat2:
        x, y, t = c
        return (x, self.ctx.e * y + t, y, x)

    def contains(self, v: Mat2) -> bool:
        return is_hankel(v) and self._lat.contains(self._hcoords(v))

    __contains__ = contains

    def index_in(self, other: "HankelLattice") -> int:
        return self._lat.index_in(other._lat)

    def quotient_reps(self, sub: "HankelLattice") -> list[Mat2]:
        return [self._from_hcoords(c) for c in self._lat.quotient_reps(sub._lat)]

    def scaled(self, t) -> "HankelLattice":
        return HankelLattice(self.parent.scaled(t))

    def __eq__(self, other):
        return isinstance(other, HankelLattice) and self._lat == other._lat

    def __repr__(self):
        return f"HankelLattice({[tuple(map(str, b)) for b in self.basis]})"


def hankel_part(L: Lattice2) -> HankelLattice:
    return HankelLattice(L)


def hankel_lattice_from(ctx: QuadExtData, gens: Iterable[Mat2]) -> HankelLattice:
    """Hankel lattice spanned by the given Hankel matrices."""
    obj = object.__new__(HankelLattice)
    obj.ctx = ctx
    obj.parent = None
    coords = []
    for g in gens:
        if not is_hankel(g):
            raise ValueError("generator is not Hankel")
        coords.append(obj._hcoords(g))
    obj._lat = Lattice(coords, ctx.p)
    obj.basis = [obj._from_hcoords(c) for c in obj._lat.basis]
    return obj


# unit groups

def unit_quotient_reps(ctx: QuadExtData, m: int, u=(1, 0)) -> list[Mat2]:
    """Representatives of R_m^x / R_{m+1}^x with the fixed unit ``u`` of E."""
    if ctx.is_split:
        raise ValueError("the unit-quotient lemma concerns a quadratic field E")
    if m < ctx.m0 - 1:
        raise ValueError(f"m = {m} is below the range m >= m0 - 1 = {ctx.m0 - 1}")
    U = e_mat(ctx, u)
    dv = ctx.dv
    if m >= ctx.m0:
        rm = varrho_mat(ctx, m)
        return [m_add(U, m_scale(dv, m_mul(m_mul(e_mat(ctx, s), rm), H))) for s in residue_reps(ctx, 1)]
    # m = m0 - 1: the h-component carries varrho^m so that the element
    # lies in R_m (this is 1 in case U and varrho in case R)
    rm = varrho_mat(ctx, m)
    out = []
    for s in residue_reps(ctx, 1):
        cand = m_add(U, m_scale(dv, m_mul(m_mul(e_mat(ctx, s), rm), H)))
        if vp(m_det(cand), ctx.p) == 0:
            out.append(cand)
    return out


def _det_form_mod_p(basis: Sequence[Mat2], p: int):
    """Integer coefficients of det(sum c_i b_i) reduced mod p."""
    n = len(basis)
    quad = {}
    for i in range(n):
        quad[(i, i)] = mod_pk(m_det(basis[i]), p, 1)
        for j in range(i + 1, n):
            cross = m_det(m_add(basis[i], basis[j])) - m_det(basis[i]) - m_det(basis[j])
            quad[(i, j)] = mod_pk(cross, p, 1)
    return quad


def _count_units(L: Lattice2, sub: Lattice2) -> int:
    """Number of x in L/sub with unit determinant (det mod p is well defined)."""
    p = L.p
    basis, moduli = L.quotient_box(sub)
    basis = [tuple(b) for b in basis]
    quad = _det_form_mod_p(basis, p)
    active = [i for i, mdl in enumerate(moduli) if mdl > 1]
    mult = 1
    for i in active:
        mult *= moduli[i] // p
    count = 0
    for digits in product(range(p), repeat=len(active)):
        c = dict(zip(active, digits))
        val = 0
        for (i, j), coef in quad.items():
            if coef and i in c and j in c:
                val += coef * c[i] * c[j]
        if val % p:
            count += 1
    return count * mult


def count_unit_quotient(ctx: QuadExtData, m: int) -> int:
    """|R_m^x / R_{m+1}^x| by counting units modulo varpi^(m+1) R."""
    K = m + 1
    deep = build_R(ctx).scaled(Q(ctx.p) ** K)
    Rm, Rm1 = build_Rm(ctx, m), build_Rm(ctx, m + 1)
    return _count_units(Rm, deep) // _count_units(Rm1, deep)


def enumerate_units(L: Lattice2, sub: Lattice2) -> list[Mat2]:
    """Brute-force list of unit residues of L/sub (small cases only)."""
    basis, moduli = L.quotient_box(sub)
    out = []
    for digits in product(*(range(mdl) for mdl in moduli)):
        x = ZERO
        for d, b in zip(digits, basis):
            if d:
                x = m_add(x, m_scale(d, tuple(b)))
        if vp(m_det(x), L.p) == 0:
            out.append(x)
    return out


def verify_unit_reps(ctx: QuadExtData, m: int, reps: Sequence[Mat2] | None = None) -> dict:
    """Check the representatives are units, pairwise incongruent and as
    many as the enumerated index."""
    reps = list(reps if reps is not None else unit_quotient_reps(ctx, m))
    Rm, Rm1 = build_Rm(ctx, m), build_Rm(ctx, m + 1)
    units_ok = all(Rm.is_unit(r) for r in reps)
    distinct = all(
        not Rm1.contains(m_mul(m_inv(reps[i]), reps[j])) for i in range(len(reps)) for j in range(i + 1, len(reps))
    )
    index = count_unit_quotient(ctx, m)
    return {
        "count": len(reps),
        "index": index,
        "units": units_ok,
        "pairwise_incongruent": distinct,
        "complete": units_ok and distinct and len(reps) == index,
    }


def partition_units(ctx: QuadExtData, m: int, depth: int | None = None) -> list[int]:
    """Brute-force coset partition of (R_m^x mod varpi^depth R) by the reps.

    Returns the class sizes; every unit must land in exactly one class.
    """
    depth = depth or m + 1
    deep = build_R(ctx).scaled(Q(ctx.p) ** depth)
    Rm1 = build_Rm(ctx, m + 1)
    reps = unit_quotient_reps(ctx, m)
    inv = [m_inv(r) for r in reps]
    sizes = [0] * len(reps)
    for x in enumerate_units(build_Rm(ctx, m), deep):
        hits = [i for i, ri in enumerate(inv) if Rm1.contains(m_mul(ri, x))]
        if len(hits) != 1:
            raise AssertionError(f"unit {x} meets {len(hits)} classes")
        sizes[hits[0]] += 1
    return sizes


# duality

def half_trace_pairing(x: Mat2, y: Mat2) -> Fraction:
    """(x, y) -> Tr(x^* y / 2)."""
    return m_trace(m_mul(m_star(x), y)) / 2


def trace_pairing(x: Mat2, y: Mat2) -> Fraction:
    return m_trace(m_mul(m_star(x), y))


def dual_lattice(L: Lattice2, pairing=half_trace_pairing) -> Lattice2:
    B = L.basis
    gram = [[pairing(a, b) for b in B] for a in B]
    if all(v == 0 for row in gram for v in row):
        raise ValueError("degenerate Gram matrix")
    try:
        ginv = mat_inverse(gram)
    except ZeroDivisionError:
        raise ValueError("degenerate Gram matrix") from None
    # dual basis d_j = sum_i ginv[i][j] b_i satisfies (b_k, d_j) = delta
    gens = []
    for j in range(4):
        v = ZERO
        for i in range(4):
            v = m_add(v, m_scale(ginv[i][j], B[i]))
        gens.append(v)
    return Lattice2(gens, L.ctx, f"{L.name}#")


class LmDescriptor:
    """L_m = varpi^(f m) R_m^# + R_m, a rank-8 lattice in M_2(F)^2."""

    def __init__(self, ctx: QuadExtData, m: int, pairing=half_trace_pairing):
        if m < 0:
            raise ValueError("m must be nonnegative")
        self.ctx, self.m = ctx, m
        self.Rm = build_Rm(ctx, m)
        self.Rm_dual = dual_lattice(self.Rm, pairing)
        self.first = self.Rm_dual.scaled(Q(ctx.p) ** (ctx.f * m))
        self.second = self.Rm

    def contains(self, pair) -> bool:
        x, y = pair
        return self.first.contains(x) and self.second.contains(y)

    def summands(self):
        return self.first, self.second


def build_Lm(ctx: QuadExtData, m: int, pairing=half_trace_pairing) -> LmDescriptor:
    return LmDescriptor(ctx, m, pairing)


def normalizes(ctx: QuadExtData, t: Mat2, L: Lattice2) -> bool:
    """t L t^-1 == L."""
    return L.conjugate(t) == L
