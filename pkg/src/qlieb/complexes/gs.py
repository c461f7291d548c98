"""Gerstenhaber-Schack differential of a finite-dimensional bialgebra.

Cochains are multilinear maps V^n -> V^m stored as numpy object arrays
of Fractions with m output axes followed by n input axes.  The
Hochschild part d1 uses the bimodule structure of V^m given by the
iterated coproduct; the coHochschild part d2 is its dual.
"""
from fractions import Fraction
from itertools import product

import numpy as np

from ..exact import StructureError
from .profiles import DGS_BIALG, profile

D2_SIGNS = ("1", "-1", "(-1)^n", "(-1)^m", "(-1)^(m+n)", "(-1)^(m+1)", "(-1)^(n+1)")


def zeros(shape):
    return np.full(shape, Fraction(0), dtype=object)


def _eq_zero(a):
    return all(x == 0 for x in np.asarray(a).flat)


class BialgebraData:
    """Structure constants: mult[k, i, j] is the e_k coefficient of e_i e_j,
    comult[i, j, k] the e_i (x) e_j coefficient of Delta(e_k)."""

    def __init__(self, dim, mult, comult, unit, counit, check=True):
        self.dim = dim
        self.mult = np.asarray(mult, dtype=object)
        self.comult = np.asarray(comult, dtype=object)
        self.unit = np.asarray(unit, dtype=object)
        self.counit = np.asarray(counit, dtype=object)
        if check:
            bad = self.axiom_failures()
            if bad:
                raise StructureError(f"bialgebra axioms fail: {', '.join(bad)}")

    def axiom_failures(self):
        M, C = self.mult, self.comult
        e = identity(self.dim)
        bad = []
        if not _eq_zero(np.einsum("kab,lkc->labc", M, M) - np.einsum("kbc,lak->labc", M, M)):
            bad.append("associativity")
        if not _eq_zero(np.einsum("kcl,abk->abcl", C, C) - np.einsum("akl,bck->abcl", C, C)):
            bad.append("coassociativity")
        if not (_eq_zero(np.einsum("kij,i->kj", M, self.unit) - e)
                and _eq_zero(np.einsum("kij,j->ki", M, self.unit) - e)):
            bad.append("unit")
        if not (_eq_zero(np.einsum("ijk,i->jk", C, self.counit) - e)
                and _eq_zero(np.einsum("ijk,j->ik", C, self.counit) - e)):
            bad.append("counit")
        lhs = np.einsum("kab,ijk->ijab", M, C)
        rhs = np.einsum("pqa,rsb,ipr,jqs->ijab", C, C, M, M)
        if not _eq_zero(lhs - rhs):
            bad.append("compatibility")
        return bad


def group_algebra_z2():
    """Group algebra of Z/2 with basis (1, g)."""
    M = zeros((2, 2, 2))
    C = zeros((2, 2, 2))
    for a, b in product(range(2), repeat=2):
        M[(a + b) % 2, a, b] = Fraction(1)
    for a in range(2):
        C[a, a, a] = Fraction(1)
    return BialgebraData(2, M, C, [Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)])


def identity(d):
    return np.eye(d, dtype=object) + zeros((d, d))


def iterated_coproduct(B, m):
    """Delta^(m-1) as an array with m output axes and one input axis."""
    if m == 1:
        return identity(B.dim)
    prev = iterated_coproduct(B, m - 1)
    # split the last output factor
    t = np.tensordot(prev, B.comult, axes=([m - 2], [2]))
    return t.transpose(tuple(range(m - 2)) + (m - 1, m, m - 2))


def iterated_product(B, n):
    """mu^(n-1) as an array with one output axis and n input axes."""
    if n == 1:
        return identity(B.dim)
    prev = iterated_product(B, n - 1)
    # multiply the product of the first n-1 factors by the last one
    t = np.tensordot(B.mult, prev, axes=([1], [0]))
    return t.transpose((0,) + tuple(range(2, n + 1)) + (1,))


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _tensor_mult(B, x, y, m):
    """Factorwise product in V^m of x and y (m leading axes each); the
    trailing axes of x, then of y, are kept."""
    tx, ty = x.ndim - m, y.ndim - m
    L = _LETTERS
    xo, xt = L[:m], L[m:m + tx]
    yo, yt = L[m + tx:2 * m + tx], L[2 * m + tx:2 * m + tx + ty]
    ro = L[2 * m + tx + ty:3 * m + tx + ty]
    spec = ",".join([xo + xt, yo + yt] + [ro[k] + xo[k] + yo[k] for k in range(m)])
    return np.einsum(spec + "->" + ro + xt + yt, x, y, *([B.mult] * m))


def d1(f, m, n, B):
    """Hochschild part: cochain V^n -> V^m to V^(n+1) -> V^m."""
    f = np.asarray(f, dtype=object)
    D = iterated_coproduct(B, m)
    res = _tensor_mult(B, D, f, m)
    for i in range(1, n + 1):
        # f(v_0, .., v_(i-1) v_i, .., v_n)
        t = np.tensordot(f, B.mult, axes=([m + i - 1], [0]))
        res = res + (-1) ** i * np.moveaxis(t, [m + n - 1, m + n], [m + i - 1, m + i])
    return res + (-1) ** (n + 1) * _tensor_mult(B, f, D, m)


def d2(f, m, n, B):
    """coHochschild part: cochain V^n -> V^m to V^n -> V^(m+1)."""
    f = np.asarray(f, dtype=object)
    P = iterated_product(B, n)
    res = _cotensor(B, P, f, n, first=True)
    for i in range(1, m + 1):
        # apply Delta to output factor i-1
        t = np.tensordot(B.comult, f, axes=([2], [i - 1]))
        # axes: (a, b), outputs except i-1, inputs
        t = np.moveaxis(t, [0, 1], [i - 1, i])
        res = res + (-1) ** i * t
    res = res + (-1) ** (m + 1) * _cotensor(B, P, f, n, first=False)
    return res


def _cotensor(B, P, f, n, first):
    """Dual of the bimodule actions: split every input with Delta, feed
    one side to mu^(n-1) and the other to f."""
    m = f.ndim - n
    L = _LETTERS
    fo, vin = L[:m], L[m:m + n]
    lft, rgt = L[m + n:m + 2 * n], L[m + 2 * n:m + 3 * n]
    po = L[m + 3 * n]
    specs = [lft[k] + rgt[k] + vin[k] for k in range(n)]
    if first:
        spec = ",".join(specs + [po + lft, fo + rgt]) + "->" + po + fo + vin
    else:
        spec = ",".join(specs + [po + rgt, fo + lft]) + "->" + fo + po + vin
    return np.einsum(spec, *([B.comult] * n), P, f)


def d2_sign(name, m, n):
    e = {"1": 0, "-1": 1, "(-1)^n": n, "(-1)^m": m, "(-1)^(m+n)": m + n,
         "(-1)^(m+1)": m + 1, "(-1)^(n+1)": n + 1}[name]
    return -1 if e % 2 else 1


def dgs_bialg(f, m, n, B, sign_profile=None):
    """Return (d1 f, s * d2 f) with the calibrated relative sign s."""
    sp = sign_profile or profile(DGS_BIALG)
    s = d2_sign(sp.get("d2_sign", "(-1)^n"), m, n)
    return d1(f, m, n, B), s * d2(f, m, n, B)


def dgs_square(f, m, n, B, sign_profile=None):
    """Components of d_gs^2 f at (m, n+2), (m+1, n+1), (m+2, n)."""
    a, b = dgs_bialg(f, m, n, B, sign_profile)
    aa, ab = dgs_bialg(a, m, n + 1, B, sign_profile)
    ba, bb = dgs_bialg(b, m + 1, n, B, sign_profile)
    return aa, ab + ba, bb
