"""Differential on bunched corollas with a single input bunch.

The value has a one-vertex part (adjacent merges of output bunches) and
a two-vertex part.  In the two-vertex part a lower vertex keeps the
output bunches I_1..I_i and I_{i+q+1}..I_n, merges the pieces I'_k of
the middle bunches together with s edge slots into one bunch, and takes
the inputs J_1; an upper vertex receives the s edges and the inputs J_2
and carries the remaining pieces I''_k as q output bunches.
"""
from fractions import Fraction
from itertools import combinations, product
from math import factorial

from ..exact import ONE, MINUS_ONE
from ..graphs import DEFQ_PLUS, Corolla, Graph, corolla_graph
from ..prop import PropElement, derivation_apply
from .profiles import D_HOCH_THICK, profile

L_CHOICES = ("0", "1", "q", "p", "i", "n")


def _l_value(name, n, i, q):
    return {"0": 0, "1": 1, "q": q, "p": n + 1 - q, "i": i, "n": n}[name]


def _subsets(labels):
    for k in range(len(labels) + 1):
        for sub in combinations(labels, k):
            yield list(sub), [x for x in labels if x not in sub]


def is_thickened(c):
    return c.family == DEFQ_PLUS and len(c.ins) == 1


def d_hoch_thickened(c, sign_profile=None, max_edges=3):
    """Value on a thickened corolla, keeping graphs with at most
    ``max_edges`` internal edges.

    The differential never removes edges, so this truncation is
    compatible with composition (unlike a genus bound: a term with no
    connecting edge can lower the genus).  Graphs and PropElements are
    handled by the derivation extension.
    """
    if isinstance(c, (Graph, PropElement)):
        return edge_truncate(derivation_apply(
            lambda x: d_hoch_thickened(x, sign_profile, max_edges), c), max_edges)
    if not is_thickened(c):
        raise ValueError(f"thickened differential needs one input bunch: {c}")
    sp = sign_profile or profile(D_HOCH_THICK)
    lname = sp.get("l", "q")
    lower_first = sp.get("vertex_order", "lower_upper") == "lower_upper"
    n = len(c.outs)
    res = PropElement((c.m, c.n))
    for i in range(n - 1):
        outs = c.outs[:i] + (c.outs[i] + c.outs[i + 1],) + c.outs[i + 2:]
        res.add_graph(corolla_graph(Corolla(c.family, outs, c.ins, c.degree + 1)),
                      MINUS_ONE if (i + 1) % 2 else ONE)
    # labels of output bunches in slot order
    bunches, start = [], 1
    for size in c.outs:
        bunches.append(list(range(start, start + size)))
        start += size
    J = list(range(1, c.n + 1))
    for q in range(1, n + 1):
        p = n + 1 - q
        for i in range(p):
            e = i + _l_value(lname, n, i, q) * (n - i - q) + 1
            sign = MINUS_ONE if e % 2 else ONE
            middle = bunches[i:i + q]
            cuts = [[(a, b) for a, b in _subsets(blk) if b] for blk in middle]
            for choice in product(*cuts):
                primes = [x for a, _ in choice for x in a]
                seconds = [b for _, b in choice]
                for J1, J2 in _subsets(J):
                    if not J1:
                        continue
                    for s in range(0, max_edges + 1):
                        if len(primes) + s == 0 or s + len(J2) == 0:
                            continue
                        g = _two_vertex(c, bunches[:i], primes, s, bunches[i + q:], J1,
                                        seconds, J2, lower_first)
                        res.add_graph(g, sign * Fraction(1, factorial(s)))
    return res


def _two_vertex(c, left, primes, s, right, J1, seconds, J2, lower_first):
    lo_sizes = tuple(len(b) for b in left) + (len(primes) + s,) + tuple(len(b) for b in right)
    up_sizes = tuple(len(b) for b in seconds)
    lo_c = Corolla(DEFQ_PLUS, lo_sizes, (len(J1),), 3 - len(lo_sizes) - 1)
    up_c = Corolla(DEFQ_PLUS, up_sizes, (s + len(J2),), 3 - len(up_sizes) - 1)
    lo, up = (0, 1) if lower_first else (1, 0)
    lo_outs = [(-1, x) for b in left for x in b] + [(-1, x) for x in primes]
    first_edge = len(lo_outs)
    lo_outs += [(up, k) for k in range(s)]
    lo_outs += [(-1, x) for b in right for x in b]
    lo_ins = [(-1, x) for x in J1]
    up_outs = [(-1, x) for b in seconds for x in b]
    up_ins = [(lo, first_edge + k) for k in range(s)] + [(-1, x) for x in J2]
    verts = [lo_c, up_c]
    outs, ins = [lo_outs, up_outs], [lo_ins, up_ins]
    if not lower_first:
        verts, outs, ins = verts[::-1], outs[::-1], ins[::-1]
    return Graph(verts, outs, ins, c.m, c.n, check=False)


def thickened_generators(max_legs):
    """Thickened corolla types with total legs at most ``max_legs``."""
    from ..exact import ordered_set_partitions
    res = []
    for q in range(1, max_legs):
        for p in range(1, max_legs - q + 1):
            sizes = set()
            for part in ordered_set_partitions(range(p)):
                sizes.add(tuple(len(b) for b in part))
            for sz in sorted(sizes):
                res.append(Corolla(DEFQ_PLUS, sz, (q,), 3 - len(sz) - 1))
    return res


def edge_truncate(x, max_edges):
    res = PropElement(x.biarity)
    for g, cf in x.terms.items():
        if g.num_edges() <= max_edges:
            res._add_canonical(g, cf)
    return res


def one_vertex_part(x):
    res = PropElement(x.biarity)
    for g, cf in x.terms.items():
        if len(g.vertices) == 1:
            res._add_canonical(g, cf)
    return res
