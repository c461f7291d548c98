"""Exhaustive enumeration of decorated graphs of a given biarity."""
from itertools import combinations_with_replacement

from .graphs import Graph, canonicalize


def vertex_multisets(types, p, q, max_vertices, min_vertices=1):
    """Yield (multiset, edge count) with the right leg balance."""
    types = sorted(types)
    for k in range(min_vertices, max_vertices + 1):
        for combo in combinations_with_replacement(types, k):
            e = sum(c.m for c in combo) - p
            if e < 0 or sum(c.n for c in combo) - q != e:
                continue
            yield combo, e


def _wirings(combo, p, q):
    """All ways of wiring the vertices in ``combo`` to p+q legs.

    Slots inside a block are filled lowest-first and the sources feeding
    one sink block appear in nondecreasing order, which removes most of
    the block-permutation redundancy; the remaining duplicates are
    removed by canonicalization afterwards.
    """
    # source blocks: vertex output blocks, then input legs
    src_blocks = []
    for v, c in enumerate(combo):
        start = 0
        for b, s in enumerate(c.outs):
            src_blocks.append(((0, v, b), v, list(range(start, start + s))))
            start += s
    for lab in range(1, q + 1):
        src_blocks.append(((1, lab, 0), -1, [lab]))
    # sinks in order: each vertex's input slots by block, then output legs
    sinks = []
    for w, c in enumerate(combo):
        start = 0
        for b, s in enumerate(c.ins):
            for j in range(start, start + s):
                sinks.append((w, j, (w, b)))
            start += s
    for lab in range(1, p + 1):
        sinks.append((-1, lab, ("L", lab)))

    used = [0] * len(src_blocks)
    outs = [[None] * c.m for c in combo]
    ins = [[None] * c.n for c in combo]
    chosen = [None] * len(sinks)

    def rec(t):
        if t == len(sinks):
            yield [list(s) for s in outs], [list(s) for s in ins]
            return
        w, j, blk = sinks[t]
        lo = -1
        if t > 0 and sinks[t - 1][2] == blk:
            lo = chosen[t - 1]
        for sb in range(max(lo, 0), len(src_blocks)):
            key, u, slots = src_blocks[sb]
            if used[sb] >= len(slots):
                continue
            if u == -1 and w == -1:
                continue  # bare strand
            if u >= 0 and u == w:
                continue
            slot = slots[used[sb]]
            used[sb] += 1
            chosen[t] = sb
            if u >= 0:
                outs[u][slot] = (w, j) if w >= 0 else (-1, j)
            if w >= 0:
                ins[w][j] = (u, slot) if u >= 0 else (-1, slot)
            yield from rec(t + 1)
            if u >= 0:
                outs[u][slot] = None
            if w >= 0:
                ins[w][j] = None
            used[sb] -= 1

    yield from rec(0)


def enumerate_graphs(types, p, q, max_vertices, max_genus=None, connected=False,
                     min_vertices=1, degree=None, weight=None):
    """Canonical nonzero graphs built from corolla ``types``.

    Returns a sorted list.  ``degree`` and ``weight`` filter on the sums
    of vertex degrees and of (valence - 2).
    """
    found = set()
    for combo, e in vertex_multisets(types, p, q, max_vertices, min_vertices):
        k = len(combo)
        if degree is not None and sum(c.degree for c in combo) != degree:
            continue
        if weight is not None and sum(c.m + c.n - 2 for c in combo) != weight:
            continue
        if max_genus is not None and e - k + 1 > max_genus:
            continue
        if connected and e < k - 1:
            continue
        for outs, ins in _wirings(combo, p, q):
            g = Graph(combo, outs, ins, p, q, check=False)
            if g.topological_order() is None:
                continue
            comps = g.components()
            if connected and comps > 1:
                continue
            if max_genus is not None and e - k + comps > max_genus:
                continue
            cf = canonicalize(g)
            if cf.is_zero:
                continue
            found.add(cf.graph)
    return sorted(found)
