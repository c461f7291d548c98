import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlieb.complexes.lieb import lieb_inf_generators
from qlieb.enumeration import enumerate_graphs
from qlieb.evaluation import (Representation, antisymmetrize, evaluate_bruteforce, evaluate_element,
                              evaluate_graph, evaluate_sequential, lie_bialgebra_representation, zeros)
from qlieb.exact import StructureError
from qlieb.graphs import LIEB_INF, Graph, corolla_graph, lieb_inf
from qlieb.poisson import two_dim_example
from qlieb.prop import compatibility_relation


def tower(n):
    """n copies of (cobracket, then bracket on both of its outputs), stacked."""
    cob, br = lieb_inf(2, 1), lieb_inf(1, 2)
    verts, outs, ins = [], [], []
    for k in range(n):
        lo, up = 2 * k, 2 * k + 1
        verts += [cob, br]
        outs.append([(up, 0), (up, 1)])
        ins.append([(-1, 1)] if k == 0 else [(lo - 1, 0)])
        outs.append([(-1, 1)] if k == n - 1 else [(up + 1, 0)])
        ins.append([(lo, 0), (lo, 1)])
    return Graph(verts, outs, ins, 1, 1)


def test_single_corolla_is_its_value():
    B, C = two_dim_example()
    rho = lie_bialgebra_representation(B, C)
    res = evaluate_graph(corolla_graph(lieb_inf(1, 2)), rho)
    assert list(res) == [1] and (res[1] == B).all()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tower_orders(n):
    B, C = two_dim_example()
    rho = lie_bialgebra_representation(B, C)
    res = evaluate_graph(tower(n), rho)
    # bracket(cobracket(e2)) = [e1, e2] - [e2, e1] = 2 e2, and e1 -> 0
    expected = zeros((2, 2))
    expected[1, 1] = Fraction(2 ** n)
    assert list(res) == [2 * n] and (res[2 * n] == expected).all()
    assert evaluate_graph(tower(n), rho, hbar_order=2 * n - 1) == {}


def test_missing_values_give_zero():
    rho = Representation(2, {})
    assert evaluate_graph(corolla_graph(lieb_inf(1, 2)), rho) == {}


def test_representation_checks():
    bad = zeros((2, 2, 2))
    bad[0, 0, 1] = Fraction(1)
    with pytest.raises(StructureError):
        Representation(2, {lieb_inf(1, 2): bad})
    with pytest.raises(StructureError):
        Representation(2, {lieb_inf(1, 2): zeros((2, 2))})
    odd = zeros((2,) * 4)
    odd[0, 1, 0, 1], odd[1, 0, 0, 1], odd[0, 1, 1, 0], odd[1, 0, 1, 0] = 1, -1, -1, 1
    with pytest.raises(StructureError):
        Representation(2, {lieb_inf(2, 2): odd})


def test_compatibility_relation_evaluates_to_zero():
    B, C = two_dim_example()
    rho = lie_bialgebra_representation(B, C)
    assert evaluate_element(compatibility_relation(LIEB_INF), rho) == {}


def test_broken_compatibility_is_detected():
    B2, C2 = two_dim_example()
    B, C = zeros((3, 3, 3)), zeros((3, 3, 3))
    B[:2, :2, :2], C[:2, :2, :2] = B2, C2
    C[0, 2, 2], C[2, 0, 2] = Fraction(1), Fraction(-1)
    rho = lie_bialgebra_representation(B, C)
    assert evaluate_element(compatibility_relation(LIEB_INF), rho)


WINDOW = [g for g in enumerate_graphs(lieb_inf_generators(4), 2, 2, 3, max_genus=1)]


def random_rep(rng, dim):
    vals = {}
    for c in lieb_inf_generators(4):
        t = zeros((dim,) * (c.m + c.n))
        for idx in np.ndindex(t.shape):
            t[idx] = Fraction(rng.randint(-2, 2))
        vals[c] = antisymmetrize(t, c.m)
    # pure contraction test: degrees are ignored
    return Representation(dim, vals, check=False)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(WINDOW) - 1), st.integers(0, 10 ** 6))
def test_contraction_order_does_not_matter(i, seed):
    g = WINDOW[i]
    rng = random.Random(seed)
    rho = random_rep(rng, 2)
    full = evaluate_graph(g, rho)
    val = next(iter(full.values())) if full else zeros((2,) * 4)
    assert (evaluate_bruteforce(g, rho) == val).all()
    order = list(range(len(g.vertices)))
    rng.shuffle(order)
    assert (evaluate_sequential(g, rho, order) == val).all()
