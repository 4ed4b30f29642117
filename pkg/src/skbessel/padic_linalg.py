"""Exact linear algebra over the local ring Z_(p) inside Q.

Vectors and matrices are lists of exact rationals (gmpy2 mpq).  A lattice is the Z_(p)-span of
a list of rational vectors; a basis in echelon form lets us test membership,
enumerate quotients and compute indices.  Z_(p) is dense in Z_p and every
group or lattice in this package is open, so rational points decide all
membership questions exactly.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import gmpy2

INF = float("inf")

# exact rational type used on the hot paths (matrix groups and lattices)
Q = gmpy2.mpq
_remove = gmpy2.remove

Vec = list


def vp(x, p: int):
    """p-adic valuation of a rational (``inf`` for zero)."""
    if x == 0:
        return INF
    if not isinstance(x, type(Q())):
        x = Q(x)
    return _remove(x.numerator, p)[1] - _remove(x.denominator, p)[1]


def unit_part(x, p: int):
    x = Q(x)
    v = vp(x, p)
    return x / Q(p) ** v


def is_integral(x, p: int) -> bool:
    return vp(x, p) >= 0


def mod_pk(x, p: int, k: int) -> int:
    """Reduce a p-integral rational modulo p^k to an integer in [0, p^k)."""
    x = Q(x)
    m = p**k
    n, d = int(x.numerator), int(x.denominator)
    if d % p == 0:
        raise ValueError(f"{x} is not p-integral")
    return (n * pow(d, -1, m)) % m


def echelon_basis(gens: Sequence[Sequence], p: int) -> list[Vec]:
    """Z_(p)-basis of the span of ``gens`` in upper echelon form.

    Each returned row has a pivot equal to a power of p, and the pivot
    columns strictly increase.  Rows are independent over Q.
    """
    rows = [[Q(c) for c in g] for g in gens]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[Vec] = []
    col = 0
    while rows and col < n:
        cand = [(vp(r[col], p), i) for i, r in enumerate(rows) if r[col] != 0]
        if not cand:
            col += 1
            continue
        v, i = min(cand)
        piv = rows.pop(i)
        scale = Q(p) ** v / piv[col]
        piv = [c * scale for c in piv]
        nxt = []
        for r in rows:
            if r[col] != 0:
                t = r[col] / piv[col]
                r = [a - t * b for a, b in zip(r, piv)]
            if any(r):
                nxt.append(r)
        rows = nxt
        basis.append(piv)
        col += 1
    return basis


def mat_inverse(m: Sequence[Sequence]) -> list[Vec]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(m)
    a = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                t = a[r][c]
                a[r] = [x - t * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Q(0)) for j in range(len(b[0]))] for i in range(len(a))]


def vec_mat(v, m):
    return [sum((v[k] * m[k][j] for k in range(len(v))), Q(0)) for j in range(len(m[0]))]


def det(m):
    n = len(m)
    a = [[Q(x) for x in row] for row in m]
    out = Q(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Q(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = -out
        out *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                t = a[r][c] / a[c][c]
                a[r] = [x - t * y for x, y in zip(a[r], a[c])]
    return out


class Lattice:
    """Full-rank Z_(p)-lattice in Q^n with exact membership."""

    def __init__(self, gens: Sequence[Sequence], p: int):
        self.p = p
        basis = echelon_basis(gens, p)
        if not basis:
            raise ValueError("empty lattice")
        n = len(basis[0])
        if len(basis) != n:
            raise ValueError(f"lattice has rank {len(basis)} < {n}")
        self.basis = basis
        self.n = n
        self._inv = mat_inverse(basis)

    def coords(self, v) -> Vec:
        return vec_mat([Q(x) for x in v], self._inv)

    def contains(self, v) -> bool:
        p = self.p
        for c in self.coords(v):
            if c != 0 and _remove(c.denominator, p)[1] > _remove(c.numerator, p)[1]:
                return False
        return True

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.contains_lattice(other) and other.contains_lattice(self)

    def scaled(self, c) -> "Lattice":
        c = Q(c)
        return Lattice([[c * x for x in b] for b in self.basis], self.p)

    def sum(self, other: "Lattice") -> "Lattice":
        return Lattice(self.basis + other.basis, self.p)

    def index_in(self, other: "Lattice") -> int:
        """[other : self] for self contained in other."""
        if not other.contains_lattice(self):
            raise ValueError("not a sublattice")
        rel = [other.coords(b) for b in self.basis]
        return self.p ** int(vp(det(rel), self.p))

    def quotient_reps(self, sub: "Lattice") -> list[Vec]:
        """Representatives of self/sub as vectors in Q^n."""
        if not self.contains_lattice(sub):
            raise ValueError("not a sublattice")
        rel = echelon_basis([self.coords(b) for b in sub.basis], self.p)
        exps = [int(vp(r[i], self.p)) for i, r in enumerate(rel)]
        out = []
        for digits in product(*(range(self.p**e) for e in exps)):
            out.append(vec_mat([Q(d) for d in digits], self.basis))
        return out

    def quotient_box(self, sub: "Lattice"):
        """(basis, moduli) such that sum c_i basis_i, 0 <= c_i < moduli_i,
        runs over self/sub exactly once."""
        rel = echelon_basis([self.coords(b) for b in sub.basis], self.p)
        exps = [int(vp(r[i], self.p)) for i, r in enumerate(rel)]
        return self.basis, [self.p**e for e in exps]
