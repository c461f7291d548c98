"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from qlieb.checks import (d1_window, dsq_report, gs_square_report, khr_check, resolution_check,
                          split_is_paired_transpose, split_matrix)
from qlieb.complexes.calibrate import search_thickened
from qlieb.complexes.defq import d1_defq
from qlieb.complexes.hochschild import d_hoch_thickened, one_vertex_part, thickened_generators
from qlieb.complexes.lieb import delta_liebinfty
from qlieb.formality import (bunched_generators, claim_ii_seed, f1, lift_inductive, lift_step,
                             lift_window, poly_split)
from qlieb.graphs import LIEB, lieb_inf
from qlieb.homology import euler_characteristic
from qlieb.poisson import (PoissonElement, bialg_relations_residual, is_zero_tensor,
                           lie_bialgebra_structure, mc_residual, poisson_bracket,
                           random_monomial_element, rep_to_gamma, two_dim_example)
from qlieb.prop import PropElement, Truncation, quotient_basis, two_vertex


def verdict(n, label, ok):
    print(f"criterion {n:2d} {label}: {'PASS' if ok else 'FAIL'}")
    assert ok


def sign(k):
    return -1 if k % 2 else 1


def all_legs(max_legs):
    return [(p, s - p) for s in range(2, max_legs + 1) for p in range(1, s)]


def test_criterion_01_delta_squared():
    start = time.perf_counter()
    rows = dsq_report("lieb-inf", 1, 6)
    elapsed = time.perf_counter() - start
    verdict(1, "delta^2 = 0 on LieB_inf generators, m+n <= 6",
            bool(rows) and all(r["zero"] for r in rows) and elapsed < 120)


def test_criterion_02_delta_22_printed():
    cob, br = lieb_inf(2, 1), lieb_inf(1, 2)
    printed = PropElement((2, 2))
    printed.add_graph(two_vertex(br, cob, ["e"], [1, 2], [1, 2], ["e"], 2, 2))
    for (a, b), (c, d), cf in [((1, 1), (2, 2), -1), ((1, 2), (2, 1), 1),
                               ((2, 2), (1, 1), -1), ((2, 1), (1, 2), 1)]:
        printed.add_graph(two_vertex(cob, br, [a, "e"], [b], [c], ["e", d], 2, 2), cf)
    got = delta_liebinfty(lieb_inf(2, 2))
    verdict(2, "delta of the (2,2) corolla equals the printed five-term element",
            got == printed and len(got.terms) == 5)


def test_criterion_03_delta_plus_squared():
    rows = dsq_report("lieb-plus", 1, 5)
    has_11 = any(r["generator"][1:3] == [[1], [1]] or r["generator"][1:3] == [1, 1]
                 for r in rows)
    verdict(3, "(delta+)^2 = 0 on LieB+_inf generators, m+n <= 5",
            bool(rows) and all(r["zero"] for r in rows) and has_11)


def test_criterion_04_d1_squared_and_paired_split():
    rows = dsq_report("defq-plus-d1", 1, 6)
    paired = all(split_is_paired_transpose(p, q) for p, q in all_legs(6))
    verdict(4, "d1^2 = 0 for p+q <= 6 and split = P d1^T P",
            bool(rows) and all(r["zero"] for r in rows) and paired)


@pytest.mark.xfail(strict=True, reason="split equals the transpose of d1 only up to the pairing "
                                       "signs P = diag((-1)^#bunches); see decisions ledger")
def test_criterion_04_plain_transpose():
    ok = True
    for p, q in all_legs(6):
        d1m, spm, _ = split_matrix(p, q)
        ok = ok and d1m.transpose() == spm
    verdict(4, "matrix(split) = transpose(matrix(d1)) without pairing signs", ok)


def test_criterion_05_khr():
    rows = khr_check(6)
    w = d1_window(2, 2)
    dims = {k: len(v) for k, v in w.bases.items()}
    ok = (all(r["match"] for r in rows) and len(rows) == len(all_legs(6))
          and dims == {-1: 4, 0: 4, 1: 1} and euler_characteristic(w) == -1)
    verdict(5, "d1 cohomology is one-dimensional in degree 3-p-q; Euler(2,2) = -1", ok)


def test_criterion_06_resolution():
    rows = resolution_check(4)
    dims = {(p, q): quotient_basis(LIEB, (p, q), Truncation(p + q, 0)).dim for p, q in [(2, 1), (3, 1)]}
    ok = all(r["match"] for r in rows) and dims == {(2, 1): 1, (3, 1): 2}
    verdict(6, "H(LieB_inf(p,q)) is LieB(p,q) in degree 0 for p+q <= 4", ok)


def test_criterion_07_gs_squared():
    rows = gs_square_report(2, 4)
    verdict(7, "d_gs^2 = 0 on the Z/2 group algebra, m+n <= 4",
            len(rows) == 6 and all(r["zero"] for r in rows))


def test_criterion_08_poisson_identities():
    rng = random.Random(2024)
    degree_choices = [(0,), (-1,), (1,), (0, 0), (0, 1), (-1, 2)]
    ok, checked = True, 0
    while checked < 100:
        degs = rng.choice(degree_choices)
        a, b, c = (random_monomial_element(rng, degs, 4, 3) for _ in range(3))
        if not (a and b and c):
            continue
        checked += 1
        da, db = a.degree(), b.degree()
        ok = ok and poisson_bracket(a, b) == poisson_bracket(b, a) * (-sign(da * db))
        ok = ok and (poisson_bracket(a, poisson_bracket(b, c))
                     == poisson_bracket(poisson_bracket(a, b), c)
                     + poisson_bracket(b, poisson_bracket(a, c)) * sign(da * db))
        ok = ok and (poisson_bracket(a, b * c)
                     == poisson_bracket(a, b) * c + (b * poisson_bracket(a, c)) * sign(da * db))
    verdict(8, "antisymmetry, Jacobi and biderivation on 100 random triples", ok)


def test_criterion_09_mc_dictionary():
    B, C = two_dim_example()
    gamma = rep_to_gamma(lie_bialgebra_structure(B, C))
    ok = not mc_residual(gamma) and all(is_zero_tensor(t) for t in bialg_relations_residual(B, C))
    verdict(9, "2-dim Lie bialgebra: MC residual and the three relations vanish", ok)


def perturbed_both_nonzero(B, C):
    mc = mc_residual(rep_to_gamma(lie_bialgebra_structure(B, C)))
    rel = not all(is_zero_tensor(t) for t in bialg_relations_residual(B, C))
    return bool(mc) and rel


@pytest.mark.xfail(strict=True, reason="every antisymmetric pair in dimension 2 is a Lie bialgebra, "
                                       "so no cobracket perturbation can break it; see ledger")
def test_criterion_09_two_dim_perturbation():
    B, C = two_dim_example()
    C = C.copy()
    C[0, 1, 0], C[1, 0, 0] = C[0, 1, 0] + 1, C[1, 0, 0] - 1
    verdict(9, "perturbed 2-dim cobracket breaks both formulations", perturbed_both_nonzero(B, C))


def test_criterion_09_three_dim_perturbation():
    B2, C2 = two_dim_example()
    B = np.full((3, 3, 3), Fraction(0), dtype=object)
    C = B.copy()
    B[:2, :2, :2], C[:2, :2, :2] = B2, C2
    ok = not perturbed_both_nonzero(B, C)
    C[0, 2, 2], C[2, 0, 2] = Fraction(1), Fraction(-1)
    verdict(9, "perturbed 3-dim embedding breaks both formulations",
            ok and perturbed_both_nonzero(B, C))


def monomials(max_legs, degrees):
    dim = len(degrees)
    for m, n in all_legs(max_legs):
        for outs in itertools.combinations_with_replacement(range(dim), m):
            for ins in itertools.combinations_with_replacement(range(dim), n):
                word = [("x", j) for j in ins] + [("p", i) for i in outs]
                f = PoissonElement.monomial(degrees, word)
                if f:
                    yield f


def test_criterion_10_f1_cycles():
    count, ok = 0, True
    for degrees in [(0, 0), (0, 1)]:
        for f in monomials(5, degrees):
            count += 1
            ok = ok and poly_split(f1(f)) == 0
    verdict(10, f"split(f1(f)) = 0 on {count} monomials, m+n <= 5", ok and count > 0)


def test_criterion_11_lifting():
    rng = random.Random(11)
    t = Truncation(2, 1)
    windows = {b: lift_window(b, -1, t) for b in [(2, 2), (3, 2)]}
    ok = True
    for i in range(100):
        biarity = (2, 2) if i % 2 == 0 else (3, 2)
        w = windows[biarity]
        x0 = PropElement(biarity)
        for g in w.bases[-1]:
            x0.add_graph(g, rng.randint(-3, 3))
        y = delta_liebinfty(x0)
        ok = ok and delta_liebinfty(lift_step(w, y, -1)) == y
    table = lift_inductive(claim_ii_seed(), max_weight=1)
    certs = table.certificates
    ok = ok and set(bunched_generators(1)) <= set(certs)
    ok = ok and all(all(c.values()) for c in certs.values())
    verdict(11, "100 random lifts round-trip; weight-1 certificates all exact", ok)


def test_criterion_12_thickened():
    gens = [c for c in thickened_generators(5) if len(c.ins) == 1 and len(c.outs) <= 4]
    one_vertex = all(one_vertex_part(d_hoch_thickened(c)) == d1_defq(c) for c in gens)
    square = all(r["zero"] for r in dsq_report("thickened", 1, 4, max_edges=3))
    unique = search_thickened(4, 3) == [[{"l": "q", "vertex_order": "lower_upper"}]]
    verdict(12, "thickened: one-vertex part is d1, d^2 = 0, calibration unique",
            bool(gens) and one_vertex and square and unique)


def cli(*args):
    return subprocess.run([sys.executable, "-m", "qlieb", *args], capture_output=True,
                          check=False).stdout


def test_criterion_13_determinism(tmp_path):
    cache = str(tmp_path / "cache")
    betti_args = ["betti", "--family", "lieb-inf", "--p", "2", "--q", "2", "--compare"]
    cold = cli("--cache-dir", cache, *betti_args)
    warm = cli("--cache-dir", cache, *betti_args)
    none = cli("--no-cache", *betti_args)
    dsq = [cli("--no-cache", "dsq", "--family", "defq-plus-d1", "--max-legs", "4") for _ in range(2)]
    ok = bool(cold) and cold == warm == none and dsq[0] == dsq[1] and bool(dsq[0])
    ok = ok and any((tmp_path / "cache").glob("*.json"))
    verdict(13, "repeated CLI runs are byte-identical; warm and cold cache agree", ok)
