"""Sign calibration: which candidate profiles make a differential square to zero.

Each search returns the passing profiles grouped by the differential
they define, so two spellings of the same map count once.
"""
import itertools
import random
from fractions import Fraction

from ..graphs import DEFQ_PLUS
from .defq import TWISTS, bunched_basis, d1_defq
from .hochschild import L_CHOICES, d_hoch_thickened, thickened_generators
from .lieb import (CORRECTIONS, delta_liebinfty, delta_plus, lieb_inf_generators,
                   lieb_plus_generators)

VERTEX_ORDERS = ("lower_upper", "upper_lower")


def _group(passing, values):
    """Group passing profiles by their value table."""
    groups = {}
    for prof in passing:
        key = tuple(sorted((str(k), str(v)) for k, v in values(prof)))
        groups.setdefault(key, []).append(prof)
    return list(groups.values())


def search_delta(max_legs=6):
    gens = lieb_inf_generators(max_legs)
    passing = []
    for corr, order in itertools.product(CORRECTIONS, VERTEX_ORDERS):
        sp = {"correction": corr, "vertex_order": order}
        d = lambda x, sp=sp: delta_liebinfty(x, sp)
        if all(not d(d(c)) for c in gens):
            passing.append(sp)
    return _group(passing, lambda sp: [(c, delta_liebinfty(c, sp).items()) for c in gens])


def search_delta_plus(max_legs=5):
    gens = lieb_plus_generators(max_legs)
    passing = []
    for a, b in itertools.product(("c_first", "d_first"), repeat=2):
        sp = {"out_graft_order": a, "in_graft_order": b}
        d = lambda x, sp=sp: delta_plus(x, sp)
        if all(not d(d(c)) for c in gens):
            passing.append(sp)
    return _group(passing, lambda sp: [(c, delta_plus(c, sp).items()) for c in gens])


def search_d1(max_legs=6):
    gens = [g for s in range(2, max_legs + 1) for p in range(1, s)
            for g in bunched_basis(p, s - p, DEFQ_PLUS)]
    passing = []
    for tw in TWISTS:
        sp = {"in_twist": tw}
        d = lambda x, sp=sp: d1_defq(x, sp)
        if all(not d(d(g)) for g in gens):
            passing.append(sp)
    return _group(passing, lambda sp: [(g, d1_defq(g, sp).items()) for g in gens])


def search_thickened(max_legs=4, max_edges=3):
    gens = thickened_generators(max_legs)
    passing = []
    for l, order in itertools.product(L_CHOICES, VERTEX_ORDERS):
        sp = {"l": l, "vertex_order": order}
        d = lambda x, sp=sp: d_hoch_thickened(x, sp, max_edges)
        if all(not d(d(c)) for c in gens):
            passing.append(sp)
    return _group(passing, lambda sp: [(c, d_hoch_thickened(c, sp, max_edges).items())
                                       for c in gens])


def search_dgs(B, max_total=4, seed=0):
    """d2 relative signs making d_gs^2 vanish on random cochains."""
    from .gs import D2_SIGNS, _eq_zero, dgs_square, zeros
    rng = random.Random(seed)
    samples = []
    for m in range(1, max_total):
        for n in range(1, max_total - m + 1):
            f = zeros((B.dim,) * (m + n))
            for idx in itertools.product(range(B.dim), repeat=m + n):
                f[idx] = Fraction(rng.randint(-3, 3))
            samples.append((f, m, n))
    passing = []
    for name in D2_SIGNS:
        sp = {"d2_sign": name}
        if all(_eq_zero(c) for f, m, n in samples for c in dgs_square(f, m, n, B, sp)):
            passing.append(sp)
    return passing
