import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from qlieb.complexes.calibrate import search_dgs
from qlieb.complexes.gs import (BialgebraData, _eq_zero, d1, d2, dgs_bialg, dgs_square,
                                group_algebra_z2, identity, iterated_coproduct, iterated_product,
                                zeros)
from qlieb.exact import StructureError


def functions_on_z2():
    """Dual of the group algebra: pointwise product, coproduct from the group law."""
    M, C = zeros((2, 2, 2)), zeros((2, 2, 2))
    for a in range(2):
        M[a, a, a] = Fraction(1)
    for a, b in product(range(2), repeat=2):
        C[a, b, (a + b) % 2] = Fraction(1)
    return BialgebraData(2, M, C, [Fraction(1), Fraction(1)], [Fraction(1), Fraction(0)])


def random_cochain(rng, dim, k):
    f = zeros((dim,) * k)
    for idx in np.ndindex(f.shape):
        f[idx] = Fraction(rng.randint(-3, 3))
    return f


def hochschild_oracle(f, n, B):
    """Direct expansion of d1 for one output, basis vector by basis vector."""
    dim = B.dim
    out = zeros((dim,) * (n + 2))

    def prod(x, y):  # vectors
        return np.einsum("kij,i,j->k", B.mult, x, y)

    def basis(i):
        v = zeros(dim)
        v[i] = Fraction(1)
        return v

    def F(vs):
        t = f
        for v in reversed(vs):
            t = np.tensordot(t, v, axes=([t.ndim - 1], [0]))
        return t

    for idx in product(range(dim), repeat=n + 1):
        vs = [basis(i) for i in idx]
        val = prod(vs[0], F(vs[1:]))
        for i in range(1, n + 1):
            merged = vs[:i - 1] + [prod(vs[i - 1], vs[i])] + vs[i + 1:]
            val = val + (-1) ** i * F(merged)
        val = val + (-1) ** (n + 1) * prod(F(vs[:-1]), vs[-1])
        out[(slice(None),) + idx] = val
    return out


def test_z2_axioms():
    assert group_algebra_z2().axiom_failures() == []
    assert functions_on_z2().axiom_failures() == []


def test_broken_bialgebra_rejected():
    B = group_algebra_z2()
    with pytest.raises(StructureError):
        BialgebraData(2, B.mult, B.comult * 2, B.unit, B.counit)


def test_d1_examples():
    B = group_algebra_z2()
    assert (d1(identity(2), 1, 1, B) == B.mult).all()
    assert _eq_zero(d1(B.mult, 1, 2, B))
    a, b = dgs_bialg(zeros((2, 2)), 1, 1, B)
    assert _eq_zero(a) and _eq_zero(b)


def test_iterated_maps():
    B = group_algebra_z2()
    assert (iterated_coproduct(B, 2) == B.comult).all()
    assert (iterated_product(B, 2) == B.mult).all()
    # coassociativity: both bracketings give Delta^(2)
    t = iterated_coproduct(B, 3)
    assert (t == np.einsum("akl,bck->abcl", B.comult, B.comult)).all()


@pytest.mark.parametrize("n", [1, 2])
def test_d1_matches_direct_expansion(n):
    rng = random.Random(n)
    for B in (group_algebra_z2(), functions_on_z2()):
        f = random_cochain(rng, 2, 1 + n)
        assert (d1(f, 1, n, B) == hochschild_oracle(f, n, B)).all()


def test_d2_on_identity():
    # the coHochschild part is the dual of the Hochschild part
    B = group_algebra_z2()
    assert (d2(identity(2), 1, 1, B) == B.comult).all()


def test_calibration_passes_frozen_sign():
    passing = search_dgs(group_algebra_z2(), 4)
    assert {"d2_sign": "(-1)^n"} in passing
    assert len(passing) == 3


def test_square_vanishes_on_dual_algebra():
    rng = random.Random(7)
    B = functions_on_z2()
    for m, n in [(1, 1), (1, 2), (2, 1)]:
        f = random_cochain(rng, 2, m + n)
        assert all(_eq_zero(c) for c in dgs_square(f, m, n, B))
