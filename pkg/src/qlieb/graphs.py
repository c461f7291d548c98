"""Decorated directed graphs with labeled legs, canonical forms and signs.

A graph stores its vertices in orientation order; the vertex order *is*
the orientation word, and reordering it costs the Koszul sign of the
vertex degrees.  Each vertex has its output slots and input slots grouped
into consecutive blocks.  A block is either antisymmetric (``sgn``
families) or symmetric (bunched families); permuting slots inside a
block costs the block character.

Endpoints are encoded as pairs.  ``(-1, label)`` is an external leg,
``(w, j)`` is an edge to slot ``j`` of vertex ``w``.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .exact import ONE, StructureError, koszul_sign, perm_sign

LIEB = "LIEB"
LIEB_INF = "LIEB_INF"
LIEB_PLUS = "LIEB_PLUS"
ASSB = "ASSB"
DEFQ = "DEFQ"
DEFQ_PLUS = "DEFQ_PLUS"
RELATION = "RELATION"  # placeholder vertex used to graft relations

FAMILIES = (LIEB, LIEB_INF, LIEB_PLUS, ASSB, DEFQ, DEFQ_PLUS, RELATION)
ANTISYMMETRIC = frozenset({LIEB, LIEB_INF, LIEB_PLUS})
BUNCHED = frozenset({DEFQ, DEFQ_PLUS})


@dataclass(frozen=True, order=True)
class Corolla:
    """Generator type: family, block sizes on both sides, degree."""

    family: str
    outs: tuple
    ins: tuple
    degree: int

    @property
    def m(self):
        return sum(self.outs)

    @property
    def n(self):
        return sum(self.ins)

    @property
    def biarity(self):
        return (self.m, self.n)

    @property
    def sign_blocks(self):
        return self.family in ANTISYMMETRIC

    def out_block_of(self):
        return _block_index(self.outs)

    def in_block_of(self):
        return _block_index(self.ins)

    def key(self):
        return (self.family, self.outs, self.ins, self.degree)


@lru_cache(maxsize=None)
def _block_index(sizes):
    idx = []
    for b, s in enumerate(sizes):
        idx.extend([b] * s)
    return tuple(idx)


@lru_cache(maxsize=None)
def _block_ranges(sizes):
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return tuple(out)


def lieb_inf(m, n):
    if m < 1 or n < 1 or m + n < 3:
        raise StructureError(f"no LieB_inf generator at ({m},{n})")
    return Corolla(LIEB_INF, (m,), (n,), 3 - m - n)


def lieb(m, n):
    if (m, n) not in ((2, 1), (1, 2)):
        raise StructureError(f"no LieB generator at ({m},{n})")
    return Corolla(LIEB, (m,), (n,), 0)


def lieb_plus(m, n):
    if (m, n) == (1, 1):
        return Corolla(LIEB_PLUS, (1,), (1,), 1)
    if m < 1 or n < 1 or m + n < 3:
        raise StructureError(f"no LieB_inf+ generator at ({m},{n})")
    return Corolla(LIEB_PLUS, (m,), (n,), 3 - m - n)


def assb(m, n):
    if (m, n) not in ((2, 1), (1, 2)):
        raise StructureError(f"no AssB generator at ({m},{n})")
    return Corolla(ASSB, (1,) * m, (1,) * n, 0)


def defq(out_sizes, in_sizes, plus=True):
    out_sizes, in_sizes = tuple(out_sizes), tuple(in_sizes)
    if not out_sizes or not in_sizes or min(out_sizes + in_sizes) < 1:
        raise StructureError("bunches must be nonempty")
    k = len(out_sizes) + len(in_sizes)
    if not plus and k < 3:
        raise StructureError("DefQ needs at least three bunches")
    return Corolla(DEFQ_PLUS if plus else DEFQ, out_sizes, in_sizes, 3 - k)


def relation_vertex(m, n, degree=0):
    return Corolla(RELATION, (1,) * m, (1,) * n, degree)


def is_valid_corolla(c):
    try:
        if c.family == LIEB_INF:
            return c == lieb_inf(c.m, c.n)
        if c.family == LIEB_PLUS:
            return c == lieb_plus(c.m, c.n)
        if c.family == LIEB:
            return c == lieb(c.m, c.n)
        if c.family == ASSB:
            return c == assb(c.m, c.n)
        if c.family in BUNCHED:
            return c == defq(c.outs, c.ins, c.family == DEFQ_PLUS)
        return c.family == RELATION
    except StructureError:
        return False


class Graph:
    """Immutable decorated graph.

    ``outs[v][k]`` is the endpoint of output slot ``k`` of vertex ``v``,
    ``ins[v][j]`` the endpoint of input slot ``j``.
    """

    __slots__ = ("vertices", "outs", "ins", "p", "q", "_hash")

    def __init__(self, vertices, outs, ins, p, q, check=True):
        self.vertices = tuple(vertices)
        self.outs = tuple(tuple(x) for x in outs)
        self.ins = tuple(tuple(x) for x in ins)
        self.p = p
        self.q = q
        self._hash = None
        if check:
            self.validate()

    # -- identity -------------------------------------------------------
    def key(self):
        return (self.p, self.q, tuple(c.key() for c in self.vertices), self.outs, self.ins)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"Graph({self.to_text()})"

    # -- structure ------------------------------------------------------
    @property
    def biarity(self):
        return (self.p, self.q)

    @property
    def degree(self):
        return sum(c.degree for c in self.vertices)

    def edges(self):
        """List of (u, k, w, j): output slot k of u feeds input slot j of w."""
        res = []
        for u, slots in enumerate(self.outs):
            for k, (w, j) in enumerate(slots):
                if w >= 0:
                    res.append((u, k, w, j))
        return res

    def num_edges(self):
        return sum(1 for slots in self.outs for w, _ in slots if w >= 0)

    def components(self):
        n = len(self.vertices)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, _, w, _ in self.edges():
            ra, rb = find(u), find(w)
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for v in range(n)})

    def genus(self):
        return self.num_edges() - len(self.vertices) + self.components()

    def weight(self):
        """Sum over vertices of (valence - 2)."""
        return sum(c.m + c.n - 2 for c in self.vertices)

    def is_connected(self):
        return self.components() <= 1

    def validate(self):
        nv = len(self.vertices)
        if len(self.outs) != nv or len(self.ins) != nv:
            raise StructureError("slot tables do not match vertex count")
        out_labels, in_labels = [], []
        for u, c in enumerate(self.vertices):
            if len(self.outs[u]) != c.m or len(self.ins[u]) != c.n:
                raise StructureError(f"vertex {u} has wrong valence")
            for k, (w, j) in enumerate(self.outs[u]):
                if w == -1:
                    out_labels.append(j)
                elif not (0 <= w < nv) or j >= len(self.ins[w]) or self.ins[w][j] != (u, k):
                    raise StructureError(f"dangling output slot {k} at vertex {u}")
            for j, (w, k) in enumerate(self.ins[u]):
                if w == -1:
                    in_labels.append(k)
                elif not (0 <= w < nv) or k >= len(self.outs[w]) or self.outs[w][k] != (u, j):
                    raise StructureError(f"dangling input slot {j} at vertex {u}")
        if sorted(out_labels) != list(range(1, self.p + 1)):
            raise StructureError("output legs are not labeled 1..p")
        if sorted(in_labels) != list(range(1, self.q + 1)):
            raise StructureError("input legs are not labeled 1..q")
        if self.topological_order() is None:
            raise StructureError("graph has a directed cycle")

    def topological_order(self):
        nv = len(self.vertices)
        indeg = [sum(1 for w, _ in self.ins[v] if w >= 0) for v in range(nv)]
        ready = [v for v in range(nv) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for w, _ in self.outs[v]:
                if w >= 0:
                    indeg[w] -= 1
                    if indeg[w] == 0:
                        ready.append(w)
        return order if len(order) == nv else None

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return {
            "vertices": [[c.family, list(c.outs), list(c.ins), c.degree] for c in self.vertices],
            "edges": [[u, k, w, j] for u, k, w, j in self.edges()],
            "out_legs": [[v, k, lab] for v, slots in enumerate(self.outs) for k, (w, lab) in enumerate(slots) if w < 0],
            "in_legs": [[v, j, lab] for v, slots in enumerate(self.ins) for j, (w, lab) in enumerate(slots) if w < 0],
            "orientation": list(range(len(self.vertices))),
            "p": self.p,
            "q": self.q,
        }

    @classmethod
    def from_json(cls, obj):
        verts = [Corolla(f, tuple(o), tuple(i), d) for f, o, i, d in obj["vertices"]]
        outs = [[None] * c.m for c in verts]
        ins = [[None] * c.n for c in verts]
        for u, k, w, j in obj["edges"]:
            outs[u][k] = (w, j)
            ins[w][j] = (u, k)
        for v, k, lab in obj["out_legs"]:
            outs[v][k] = (-1, lab)
        for v, j, lab in obj["in_legs"]:
            ins[v][j] = (-1, lab)
        if any(x is None for s in outs + ins for x in s):
            raise StructureError("unassigned slot in graph encoding")
        order = obj.get("orientation", list(range(len(verts))))
        g = cls(verts, outs, ins, obj["p"], obj["q"])
        if list(order) != list(range(len(verts))):
            g, s = reorder_vertices(g, order)
            return g, s
        return g

    def to_text(self):
        parts = []
        for v, c in enumerate(self.vertices):
            o = ",".join(_ep(e) for e in self.outs[v])
            i = ",".join(_ep(e) for e in self.ins[v])
            parts.append(f"{c.family}{list(c.outs)}{list(c.ins)}[{o}|{i}]")
        return "; ".join(parts)


def _ep(e):
    w, x = e
    return f"L{x}" if w < 0 else f"{w}.{x}"


def corolla_graph(c, out_labels=None, in_labels=None):
    """One-vertex graph of ``c``; slot s carries label s+1 unless given."""
    out_labels = out_labels or list(range(1, c.m + 1))
    in_labels = in_labels or list(range(1, c.n + 1))
    return Graph([c], [[(-1, a) for a in out_labels]], [[(-1, b) for b in in_labels]], c.m, c.n)


def bunched_corolla_graph(family, bunching_out, bunching_in):
    """One-vertex DefQ graph from Bunchings (or sequences of label sets)."""
    bo = [tuple(sorted(b)) for b in getattr(bunching_out, "bunches", bunching_out)]
    bi = [tuple(sorted(b)) for b in getattr(bunching_in, "bunches", bunching_in)]
    c = defq([len(b) for b in bo], [len(b) for b in bi], family == DEFQ_PLUS)
    return corolla_graph(c, [x for b in bo for x in b], [x for b in bi for x in b])


def reorder_vertices(g, order):
    """Move vertex order[i] to position i; returns (graph, Koszul sign)."""
    pos = {old: new for new, old in enumerate(order)}
    verts = [g.vertices[o] for o in order]

    def re(e):
        return e if e[0] < 0 else (pos[e[0]], e[1])

    outs = [[re(e) for e in g.outs[o]] for o in order]
    ins = [[re(e) for e in g.ins[o]] for o in order]
    sign = koszul_sign([pos[i] for i in range(len(order))], [c.degree for c in g.vertices])
    return Graph(verts, outs, ins, g.p, g.q, check=False), sign


def relabel_legs(g, out_map, in_map):
    """Rename leg labels by the dicts (old label -> new label)."""
    outs = [[(w, out_map[x]) if w < 0 else (w, x) for w, x in s] for s in g.outs]
    ins = [[(w, in_map[x]) if w < 0 else (w, x) for w, x in s] for s in g.ins]
    return Graph(g.vertices, outs, ins, g.p, g.q, check=False)


def permute_slots(g, v, out_perm=None, in_perm=None):
    """Reorder the slots of vertex ``v``.

    ``out_perm[new] = old``.  Permutations must preserve blocks; the
    returned sign is the product of block characters.
    """
    c = g.vertices[v]
    out_perm = list(out_perm) if out_perm is not None else list(range(c.m))
    in_perm = list(in_perm) if in_perm is not None else list(range(c.n))
    ob, ib = c.out_block_of(), c.in_block_of()
    if any(ob[out_perm[i]] != ob[i] for i in range(c.m)) or any(ib[in_perm[i]] != ib[i] for i in range(c.n)):
        raise StructureError("slot permutation mixes blocks")
    sign = ONE
    if c.sign_blocks:
        sign = perm_sign(out_perm) * perm_sign(in_perm)
    outs = [list(s) for s in g.outs]
    ins = [list(s) for s in g.ins]
    outs[v] = [g.outs[v][old] for old in out_perm]
    ins[v] = [g.ins[v][old] for old in in_perm]
    for k, (w, j) in enumerate(outs[v]):
        if w >= 0:
            ins[w][j] = (v, k)
    for j, (u, k) in enumerate(ins[v]):
        if u >= 0:
            outs[u][k] = (v, j)
    # a self-loop is impossible in a DAG, so the updates above never clash
    for k, (w, j) in enumerate(outs[v]):
        if w == v:
            raise StructureError("self-loop")
    res = Graph(g.vertices, outs, ins, g.p, g.q, check=False)
    return res, sign


# ---------------------------------------------------------------------------
# canonical forms


class Canonical:
    """Result of canonicalization: graph, sign, automorphism count.

    ``graph is None`` marks a graph that equals minus itself.
    """

    __slots__ = ("graph", "sign", "aut")

    def __init__(self, graph, sign, aut):
        self.graph, self.sign, self.aut = graph, sign, aut

    @property
    def is_zero(self):
        return self.graph is None

    def __repr__(self):
        return f"Canonical({self.graph!r}, {self.sign}, aut={self.aut})"


def _initial_colors(g):
    cols = []
    for v, c in enumerate(g.vertices):
        ob, ib = c.out_block_of(), c.in_block_of()
        oleg = tuple(sorted((ob[k], x) for k, (w, x) in enumerate(g.outs[v]) if w < 0))
        ileg = tuple(sorted((ib[j], x) for j, (w, x) in enumerate(g.ins[v]) if w < 0))
        cols.append((c.key(), oleg, ileg))
    return _rank(cols)


def _rank(sigs):
    table = {s: r for r, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _refine(g):
    col = _initial_colors(g)
    nv = len(col)
    while True:
        sigs = []
        for v in range(nv):
            c = g.vertices[v]
            ob, ib = c.out_block_of(), c.in_block_of()
            nb = []
            for k, (w, j) in enumerate(g.outs[v]):
                if w >= 0:
                    nb.append((0, ob[k], col[w], g.vertices[w].in_block_of()[j]))
            for j, (u, k) in enumerate(g.ins[v]):
                if u >= 0:
                    nb.append((1, ib[j], col[u], g.vertices[u].out_block_of()[k]))
            sigs.append((col[v], tuple(sorted(nb))))
        new = _rank(sigs)
        if len(set(new)) == len(set(col)):
            return new
        col = new


def _apply_order(g, order):
    """Relabel g with vertex ``order``; slots sorted canonically.

    Returns (serialization key, new graph, sign, bundle data).
    """
    nv = len(order)
    pos = [0] * nv
    for new, old in enumerate(order):
        pos[old] = new
    verts = g.vertices
    sign = koszul_sign([pos[i] for i in range(nv)], [c.degree for c in verts])
    # output slots first: sort each block by target position
    out_perm = []  # per old vertex: new index -> old slot
    out_rank = []  # per old vertex: old slot -> new index
    for v in range(nv):
        c = verts[v]
        perm = []
        for rng in _block_ranges(c.outs):
            keyed = []
            for k in rng:
                w, j = g.outs[v][k]
                if w < 0:
                    keyed.append(((0, j, 0), k))
                else:
                    keyed.append(((1, pos[w], verts[w].in_block_of()[j]), k))
            keyed.sort()
            perm.extend(k for _, k in keyed)
        rank = [0] * c.m
        for new, old in enumerate(perm):
            rank[old] = new
        out_perm.append(perm)
        out_rank.append(rank)
        if c.sign_blocks:
            sign = sign * perm_sign(perm)
    in_perm, in_rank = [], []
    for v in range(nv):
        c = verts[v]
        perm = []
        for rng in _block_ranges(c.ins):
            keyed = []
            for j in rng:
                u, k = g.ins[v][j]
                if u < 0:
                    keyed.append(((0, k, 0), j))
                else:
                    keyed.append(((1, pos[u], out_rank[u][k]), j))
            keyed.sort()
            perm.extend(j for _, j in keyed)
        rank = [0] * c.n
        for new, old in enumerate(perm):
            rank[old] = new
        in_perm.append(perm)
        in_rank.append(rank)
        if c.sign_blocks:
            sign = sign * perm_sign(perm)
    new_outs, new_ins = [], []
    for old in order:
        so = []
        for k in out_perm[old]:
            w, j = g.outs[old][k]
            so.append((-1, j) if w < 0 else (pos[w], in_rank[w][j]))
        new_outs.append(tuple(so))
        si = []
        for j in in_perm[old]:
            u, k = g.ins[old][j]
            si.append((-1, k) if u < 0 else (pos[u], out_rank[u][k]))
        new_ins.append(tuple(si))
    new_verts = tuple(verts[o] for o in order)
    key = (tuple(c.key() for c in new_verts), tuple(new_outs), tuple(new_ins))
    return key, new_verts, new_outs, new_ins, sign


def _bundles(g):
    """Multiplicities of parallel edges grouped by (out block, in block)."""
    cnt = {}
    for u, k, w, j in g.edges():
        key = (u, g.vertices[u].out_block_of()[k], w, g.vertices[w].in_block_of()[j])
        cnt[key] = cnt.get(key, 0) + 1
    return cnt


@lru_cache(maxsize=200000)
def canonicalize(g):
    """Canonical relabeling of ``g`` with its sign and automorphism order."""
    nv = len(g.vertices)
    if nv == 0:
        return Canonical(g, ONE, 1)
    aut_bundle = 1
    for (u, _, w, _), s in _bundles(g).items():
        if s >= 2:
            cu, cw = g.vertices[u], g.vertices[w]
            if cu.sign_blocks != cw.sign_blocks:
                return Canonical(None, ONE, 0)
            aut_bundle *= factorial(s)
    col = _refine(g)
    classes = {}
    for v in range(nv):
        classes.setdefault(col[v], []).append(v)
    groups = [classes[k] for k in sorted(classes)]
    best = None
    best_signs = []
    for choice in product(*(permutations(grp) for grp in groups)):
        order = [v for grp in choice for v in grp]
        key, verts, outs, ins, sign = _apply_order(g, order)
        if best is None or key < best[0]:
            best = (key, verts, outs, ins)
            best_signs = [sign]
        elif key == best[0]:
            best_signs.append(sign)
    if any(s != best_signs[0] for s in best_signs):
        return Canonical(None, ONE, 0)
    _, verts, outs, ins = best
    cg = Graph(verts, outs, ins, g.p, g.q, check=False)
    return Canonical(cg, best_signs[0], len(best_signs) * aut_bundle)


def automorphism_order(g):
    return canonicalize(g).aut


def is_zero_graph(g):
    return canonicalize(g).is_zero


def disjoint_union(a, b):
    """Juxtapose ``b`` after ``a``; b's leg labels are shifted."""
    off = len(a.vertices)

    def sh(e, dp):
        return (-1, e[1] + dp) if e[0] < 0 else (e[0] + off, e[1])

    outs = list(a.outs) + [[sh(e, a.p) for e in s] for s in b.outs]
    ins = list(a.ins) + [[(-1, e[1] + a.q) if e[0] < 0 else (e[0] + off, e[1]) for e in s] for s in b.ins]
    return Graph(a.vertices + b.vertices, outs, ins, a.p + b.p, a.q + b.q, check=False)


def substitute(g, v, r):
    """Insert graph ``r`` in place of vertex ``v`` of ``g`` (no sign).

    Output leg ``l`` of ``r`` is glued to output slot ``l-1`` of ``v``,
    input leg ``l`` to input slot ``l-1``.  The vertices of ``r`` take the
    place of ``v`` in the orientation word.
    """
    c = g.vertices[v]
    if (r.p, r.q) != (c.m, c.n):
        raise StructureError(f"replacement biarity {(r.p, r.q)} does not match vertex {(c.m, c.n)}")
    k = len(r.vertices)
    nv = len(g.vertices)

    def gmap(w):  # old g vertex index -> new index (w != v)
        return w if w < v else w + k - 1

    # where each slot of v ends up inside r
    r_out_slot = {}
    for x, slots in enumerate(r.outs):
        for s, (w, lab) in enumerate(slots):
            if w < 0:
                r_out_slot[lab - 1] = (x + v, s)
    r_in_slot = {}
    for x, slots in enumerate(r.ins):
        for s, (w, lab) in enumerate(slots):
            if w < 0:
                r_in_slot[lab - 1] = (x + v, s)

    outs, ins, verts = [], [], []
    for w in range(nv):
        if w == v:
            for x in range(k):
                verts.append(r.vertices[x])
                so = []
                for s, (t, lab) in enumerate(r.outs[x]):
                    if t >= 0:
                        so.append((t + v, lab))
                    else:
                        tgt = g.outs[v][lab - 1]
                        so.append(tgt if tgt[0] < 0 else (gmap(tgt[0]), tgt[1]))
                si = []
                for s, (t, lab) in enumerate(r.ins[x]):
                    if t >= 0:
                        si.append((t + v, lab))
                    else:
                        src = g.ins[v][lab - 1]
                        si.append(src if src[0] < 0 else (gmap(src[0]), src[1]))
                outs.append(so)
                ins.append(si)
            continue
        verts.append(g.vertices[w])
        so = []
        for t, s in g.outs[w]:
            if t < 0:
                so.append((t, s))
            elif t == v:
                so.append(r_in_slot[s])
            else:
                so.append((gmap(t), s))
        si = []
        for t, s in g.ins[w]:
            if t < 0:
                si.append((t, s))
            elif t == v:
                si.append(r_out_slot[s])
            else:
                si.append((gmap(t), s))
        outs.append(so)
        ins.append(si)
    return Graph(verts, outs, ins, g.p, g.q, check=False)

