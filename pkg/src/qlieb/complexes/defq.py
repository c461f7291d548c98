"""Bunched corollas: the merge differential d1 and its dual splitting.

A bunched corolla is stored as a one-vertex graph whose slots are
grouped into symmetric blocks (the bunches).  Merging adjacent bunches
keeps the slot order and only changes the block sizes, so both maps are
written on corolla types and relabeled by substitution.
"""
from itertools import combinations

from ..exact import ONE, MINUS_ONE, enumerate_bunchings
from ..graphs import (BUNCHED, DEFQ, DEFQ_PLUS, Corolla, Graph, bunched_corolla_graph,
                      corolla_graph)
from ..prop import PropElement, derivation_apply
from .profiles import D1_DEFQ, DGS_POLY, profile

TWISTS = ("0", "m", "m+1")


def _twist(name, m):
    return {"0": 0, "m": m, "m+1": m + 1}[name]


def _merged(sizes, i):
    return sizes[:i] + (sizes[i] + sizes[i + 1],) + sizes[i + 2:]


def _allowed(family, outs, ins):
    return family == DEFQ_PLUS or len(outs) + len(ins) >= 3


def d1_defq(c, sign_profile=None):
    """Merge adjacent bunches: sum of (-1)^i over outputs, twisted signs over inputs.

    ``c`` may be a corolla type (standard labels) or any graph, in which
    case the derivation extension is returned.
    """
    if isinstance(c, (Graph, PropElement)):
        return derivation_apply(lambda x: d1_defq(x, sign_profile), c)
    sp = sign_profile or profile(D1_DEFQ)
    tw = sp.get("in_twist", "m")
    res = PropElement((c.m, c.n))
    if c.family not in BUNCHED:
        raise ValueError(f"d1 acts on bunched corollas, got {c.family}")
    nout = len(c.outs)
    for i in range(nout - 1):
        outs = _merged(c.outs, i)
        if _allowed(c.family, outs, c.ins):
            new = Corolla(c.family, outs, c.ins, c.degree + 1)
            res.add_graph(corolla_graph(new), MINUS_ONE if (i + 1) % 2 else ONE)
    for j in range(len(c.ins) - 1):
        ins = _merged(c.ins, j)
        if _allowed(c.family, c.outs, ins):
            new = Corolla(c.family, c.outs, ins, c.degree + 1)
            e = j + 1 + _twist(tw, nout)
            res.add_graph(corolla_graph(new), MINUS_ONE if e % 2 else ONE)
    return res


def _splits(g, side, b):
    """All ways to cut bunch ``b`` of the single vertex of ``g`` in two."""
    c = g.vertices[0]
    sizes = c.outs if side == "out" else c.ins
    slots = g.outs[0] if side == "out" else g.ins[0]
    labels = [lab for _, lab in slots]
    start = sum(sizes[:b])
    block = labels[start:start + sizes[b]]
    res = []
    for k in range(1, len(block)):
        for left in combinations(block, k):
            right = [x for x in block if x not in left]
            new_labels = labels[:start] + list(left) + right + labels[start + sizes[b]:]
            new_sizes = sizes[:b] + (k, len(block) - k) + sizes[b + 1:]
            res.append((new_sizes, new_labels))
    return res


def dgs_poly_split(x, sign_profile=None):
    """Operator-side differential: split one bunch into two adjacent ones.

    Output bunch i (1-based) is split with sign (-1)^(i+1); input bunch j
    with (-1)^(j+1) times the same twist as d1 uses for inputs.
    Accepts a one-vertex graph or a PropElement of such graphs.
    """
    if isinstance(x, Graph):
        x = PropElement.from_graph(x)
    sp = sign_profile or profile(DGS_POLY)
    tw = sp.get("in_twist", "m")
    res = PropElement(x.biarity)
    for g, coeff in x.terms.items():
        if len(g.vertices) != 1 or g.vertices[0].family not in BUNCHED:
            raise ValueError("dgs_poly_split acts on single bunched corollas")
        c = g.vertices[0]
        in_labels = [lab for _, lab in g.ins[0]]
        out_labels = [lab for _, lab in g.outs[0]]
        for b in range(len(c.outs)):
            s = ONE if b % 2 == 0 else MINUS_ONE
            for sizes, labels in _splits(g, "out", b):
                new = Corolla(c.family, sizes, c.ins, c.degree - 1)
                res.add_graph(corolla_graph(new, labels, in_labels), coeff * s)
        for b in range(len(c.ins)):
            e = b + _twist(tw, len(c.outs))
            s = ONE if e % 2 == 0 else MINUS_ONE
            for sizes, labels in _splits(g, "in", b):
                new = Corolla(c.family, c.outs, sizes, c.degree - 1)
                res.add_graph(corolla_graph(new, out_labels, labels), coeff * s)
    return res


def bunched_basis(p, q, family=DEFQ_PLUS, degree=None):
    """Canonical one-vertex graphs for all bunchings of p outputs, q inputs."""
    res = set()
    for bo in enumerate_bunchings(p):
        for bi in enumerate_bunchings(q):
            if family == DEFQ and len(bo) + len(bi) < 3:
                continue
            g = bunched_corolla_graph(family, bo, bi)
            if degree is not None and g.degree != degree:
                continue
            res.add(g)
    from ..graphs import canonicalize
    return sorted({canonicalize(g).graph for g in res})


def bunched_degrees(p, q):
    return sorted({3 - a - b for a in range(1, p + 1) for b in range(1, q + 1)})


def pairing_sign(g):
    """Diagonal coefficient pairing between corollas and operators."""
    c = g.vertices[0]
    return MINUS_ONE if (len(c.outs) + len(c.ins)) % 2 else ONE
