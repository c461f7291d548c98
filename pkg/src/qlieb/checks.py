"""Window-level checks shared by the command line and the test suite."""
from itertools import product

from .complexes import gs
from .complexes.defq import bunched_basis, d1_defq, dgs_poly_split, pairing_sign
from .complexes.hochschild import d_hoch_thickened, thickened_generators
from .complexes.lieb import (delta_liebinfty, delta_plus, lieb_inf_generators,
                             lieb_plus_generators)
from .graphs import DEFQ_PLUS, LIEB, LIEB_INF, lieb_inf
from .homology import ChainWindow, SparseMatrix, betti, euler_characteristic
from .prop import Truncation, compatibility_relation, free_basis, quotient_basis

FAMILIES = ("lieb-inf", "lieb-plus", "defq-plus-d1", "thickened", "gs-z2")


def _raw_square_terms(d, c):
    """Number of terms of d(d(c)) before like terms are combined."""
    first = d(c)
    count = 0
    for g, _ in first.items():
        for v in g.vertices:
            count += len(d(v).terms)
    return count


def _generators(family, min_legs, max_legs, max_edges=3):
    if family == "lieb-inf":
        gens = lieb_inf_generators(max_legs)
        d = delta_liebinfty
    elif family == "lieb-plus":
        gens = lieb_plus_generators(max_legs)
        d = delta_plus
    elif family == "defq-plus-d1":
        gens = [g.vertices[0] for s in range(2, max_legs + 1) for p in range(1, s)
                for g in bunched_basis(p, s - p, DEFQ_PLUS)]
        gens = sorted(set(gens))
        d = d1_defq
    elif family == "thickened":
        gens = thickened_generators(max_legs)
        d = lambda x: d_hoch_thickened(x, max_edges=max_edges)
    else:
        raise ValueError(f"unknown family {family}")
    return [c for c in gens if c.m + c.n >= min_legs], d


def dsq_report(family, min_legs=1, max_legs=6, max_edges=3):
    """Per generator: raw term count of d^2 and whether it vanishes."""
    if family == "gs-z2":
        return gs_square_report(min_legs, max_legs)
    gens, d = _generators(family, min_legs, max_legs, max_edges)
    rows = []
    for c in gens:
        sq = d(d(c))
        rows.append({"generator": [c.family, list(c.outs), list(c.ins), c.degree],
                     "raw_terms": _raw_square_terms(d, c),
                     "zero": not sq})
    return rows


def gs_square_report(min_legs=2, max_legs=4):
    """d_gs^2 on every elementary cochain of the Z/2 group algebra."""
    B = gs.group_algebra_z2()
    rows = []
    for total in range(max(min_legs, 2), max_legs + 1):
        for m in range(1, total):
            n = total - m
            zero = True
            for idx in product(range(B.dim), repeat=m + n):
                f = gs.zeros((B.dim,) * (m + n))
                f[idx] = 1
                if not all(gs._eq_zero(x) for x in gs.dgs_square(f, m, n, B)):
                    zero = False
            rows.append({"generator": ["GS", m, n], "raw_terms": B.dim ** (m + n), "zero": zero})
    return rows


# -- bunched corollas ---------------------------------------------------------

def d1_window(p, q, family=DEFQ_PLUS):
    bases = {}
    for g in bunched_basis(p, q, family):
        bases.setdefault(g.degree, []).append(g)
    return ChainWindow(bases, d1_defq, name=f"D1_DEFQ{(p, q)}")


def khr_check(max_legs=6):
    """Per-corolla d1 cohomology at every (p, q) with p + q <= max_legs."""
    rows = []
    for s in range(2, max_legs + 1):
        for p in range(1, s):
            q = s - p
            w = d1_window(p, q)
            b = {k: v for k, v in betti(w).items() if v}
            rows.append({"p": p, "q": q, "betti": b, "expected": {3 - p - q: 1},
                         "euler": euler_characteristic(w), "match": b == {3 - p - q: 1}})
    return rows


def split_matrix(p, q):
    """Matrices of d1 and of the bunch-splitting differential at (p, q),
    on the same ordered basis, plus the pairing signs."""
    basis = bunched_basis(p, q, DEFQ_PLUS)
    index = {g: i for i, g in enumerate(basis)}
    n = len(basis)
    d1m, spm = SparseMatrix(n, n), SparseMatrix(n, n)
    for j, g in enumerate(basis):
        for h, c in d1_defq(g).items():
            d1m.set(index[h], j, c)
        for h, c in dgs_poly_split(g).items():
            spm.set(index[h], j, c)
    signs = [pairing_sign(g) for g in basis]
    return d1m, spm, signs


def split_is_paired_transpose(p, q):
    """split = P d1^T P with P the diagonal pairing signs."""
    d1m, spm, signs = split_matrix(p, q)
    t = d1m.transpose()
    paired = SparseMatrix(t.rows, t.cols)
    for (r, c), v in t.entries().items():
        paired.set(r, c, v * signs[r] * signs[c])
    return paired == spm


# -- resolution ------------------------------------------------------------------

def lieb_inf_window(p, q, max_vertices=None, max_genus=0):
    t = Truncation(max_vertices if max_vertices is not None else p + q, max_genus)
    types = lieb_inf_generators(p + q + 2 * max_genus)
    bases = {}
    for g in free_basis(types, (p, q), t):
        bases.setdefault(g.degree, []).append(g)
    return ChainWindow(bases, delta_liebinfty, name=f"LIEB_INF{(p, q)}")


def resolution_check(max_legs=4, max_genus=0):
    """Cohomology of LieB_inf(p, q) against the quotient LieB(p, q)."""
    rows = []
    for s in range(2, max_legs + 1):
        for p in range(1, s):
            q = s - p
            w = lieb_inf_window(p, q, max_genus=max_genus)
            b = {k: v for k, v in betti(w).items() if v}
            qd = quotient_basis(LIEB, (p, q), Truncation(p + q, max_genus)).dim
            expected = {0: qd} if qd else {}
            rows.append({"p": p, "q": q, "betti": b, "quotient_dim": qd, "match": b == expected})
    return rows


def delta_22_matches_printed():
    """delta of the (2,2) generator against the printed five-term element."""
    return delta_liebinfty(lieb_inf(2, 2)) == compatibility_relation(LIEB_INF)
