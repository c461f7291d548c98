"""Linear combinations of graphs, derivations, free and quotient bases."""
from dataclasses import dataclass
from fractions import Fraction

from .exact import ONE, ZERO, StructureError, scalar
from .graphs import (ASSB, LIEB, RELATION, Graph, canonicalize, assb, lieb, lieb_inf,
                     relation_vertex, substitute)
from .enumeration import enumerate_graphs


class ConfigurationError(KeyError):
    """A generator value table does not cover a needed corolla."""


class TruncationError(RuntimeError):
    """A computation left its finite window."""

    def __init__(self, message, graph=None):
        super().__init__(message)
        self.graph = graph


@dataclass(frozen=True)
class Truncation:
    max_vertices: int
    max_genus: int = 0
    max_total_legs: int = 8

    def __post_init__(self):
        if min(self.max_vertices, self.max_genus, self.max_total_legs) < 0:
            raise ValueError("truncation bounds must be nonnegative")

    def admits(self, g):
        return (len(g.vertices) <= self.max_vertices and g.genus() <= self.max_genus
                and g.p + g.q <= self.max_total_legs)

    def to_json(self):
        return {"max_vertices": self.max_vertices, "max_genus": self.max_genus,
                "max_total_legs": self.max_total_legs}


class PropElement:
    """Finite rational combination of canonical graphs of one biarity."""

    __slots__ = ("biarity", "terms")

    def __init__(self, biarity, terms=None):
        self.biarity = tuple(biarity)
        self.terms = {}
        if terms:
            for g, c in terms.items():
                self.add_graph(g, c)

    @classmethod
    def from_graph(cls, g, coeff=ONE):
        el = cls(g.biarity)
        el.add_graph(g, coeff)
        return el

    @classmethod
    def zero(cls, biarity):
        return cls(biarity)

    def add_graph(self, g, coeff=ONE):
        """Add ``coeff * g`` in place, canonicalizing ``g`` first."""
        coeff = scalar(coeff)
        if coeff == 0:
            return self
        if g.biarity != self.biarity:
            raise StructureError(f"biarity {g.biarity} does not match {self.biarity}")
        cf = canonicalize(g)
        if cf.is_zero:
            return self
        self._add_canonical(cf.graph, coeff * cf.sign)
        return self

    def _add_canonical(self, g, coeff):
        c = self.terms.get(g, ZERO) + coeff
        if c:
            self.terms[g] = c
        else:
            self.terms.pop(g, None)

    def copy(self):
        el = PropElement(self.biarity)
        el.terms = dict(self.terms)
        return el

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def coefficient(self, g):
        cf = canonicalize(g)
        if cf.is_zero:
            return ZERO
        return self.terms.get(cf.graph, ZERO) * cf.sign

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        res = self.copy()
        for g, c in other.terms.items():
            res._add_canonical(g, c)
        return res

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        res = PropElement(self.biarity)
        res.terms = {g: -c for g, c in self.terms.items()}
        return res

    def __mul__(self, k):
        k = scalar(k)
        res = PropElement(self.biarity)
        if k:
            res.terms = {g: c * k for g, c in self.terms.items()}
        return res

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, PropElement) and self.biarity == other.biarity and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return f"PropElement{self.biarity}(0)"
        body = " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*[{g.to_text()}]" for g, c in self.items())
        return f"PropElement{self.biarity}({body})"

    def degree(self):
        degs = {g.degree for g in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def max_vertices(self):
        return max((len(g.vertices) for g in self.terms), default=0)

    def to_json(self):
        return {"biarity": list(self.biarity),
                "terms": [[g.to_json(), str(c)] for g, c in self.items()]}

    @classmethod
    def from_json(cls, obj):
        el = cls(tuple(obj["biarity"]))
        for gj, c in obj["terms"]:
            res = Graph.from_json(gj)
            if isinstance(res, tuple):
                g, s = res
                el.add_graph(g, Fraction(c) * s)
            else:
                el.add_graph(res, Fraction(c))
        return el


def substitute_vertex(g, v, replacement):
    """Replace vertex ``v`` of ``g`` by a PropElement of matching biarity."""
    c = g.vertices[v]
    if tuple(replacement.biarity) != (c.m, c.n):
        raise StructureError(f"replacement biarity {replacement.biarity} does not match {(c.m, c.n)}")
    res = PropElement(g.biarity)
    for r, coeff in replacement.terms.items():
        res.add_graph(substitute(g, v, r), coeff)
    return res


def _lookup(gen_values, c):
    if callable(gen_values):
        val = gen_values(c)
    else:
        if c not in gen_values:
            raise ConfigurationError(c)
        val = gen_values[c]
    if val is None:
        raise ConfigurationError(c)
    return val


def derivation_apply(gen_values, x, degree=1):
    """Extend generator values to ``x`` as a derivation of the given degree.

    Hitting vertex ``v`` costs the Koszul sign of moving the derivation
    past the vertices before ``v`` in the orientation word.
    """
    if isinstance(x, Graph):
        x = PropElement.from_graph(x)
    res = PropElement(x.biarity)
    for g, coeff in x.terms.items():
        prefix = 0
        for v, c in enumerate(g.vertices):
            val = _lookup(gen_values, c)
            s = -coeff if (degree * prefix) % 2 else coeff
            prefix += c.degree
            for r, rc in val.terms.items():
                res.add_graph(substitute(g, v, r), s * rc)
    return res


def free_basis(types, biarity, t, degree=None, connected=False, weight=None):
    """Sorted canonical graphs over corolla ``types`` inside ``t``."""
    p, q = biarity
    if p + q > t.max_total_legs:
        return []
    return enumerate_graphs(types, p, q, t.max_vertices, t.max_genus, connected,
                            degree=degree, weight=weight)


# ---------------------------------------------------------------------------
# relations of the quotient props


def two_vertex(lower, upper, lower_outs, lower_ins, upper_outs, upper_ins, p, q):
    """Graph with one edge from ``lower`` to ``upper``.

    Slot entries are leg labels, except the string ``"e"`` which marks
    the connecting edge.  The orientation word is (lower, upper).
    """
    ke = lower_outs.index("e")
    je = upper_ins.index("e")
    lo = [(1, je) if x == "e" else (-1, x) for x in lower_outs]
    li = [(-1, x) for x in lower_ins]
    uo = [(-1, x) for x in upper_outs]
    ui = [(0, ke) if x == "e" else (-1, x) for x in upper_ins]
    return Graph([lower, upper], [lo, uo], [li, ui], p, q)


def lie_bialgebra_relations(family=LIEB):
    """Co-Jacobi, Jacobi and the five-term compatibility relation.

    Generators are the (2,1) cobracket and the (1,2) bracket of
    ``family`` (LIEB or LIEB_INF).
    """
    mk = lieb if family == LIEB else lieb_inf
    cob, br = mk(2, 1), mk(1, 2)
    cojac = PropElement((3, 1))
    for a, b, c in ((1, 2, 3), (3, 1, 2), (2, 3, 1)):
        cojac.add_graph(two_vertex(cob, cob, ["e", c], [1], [a, b], ["e"], 3, 1))
    jac = PropElement((1, 3))
    for a, b, c in ((1, 2, 3), (3, 1, 2), (2, 3, 1)):
        jac.add_graph(two_vertex(br, br, ["e"], [a, b], [1], ["e", c], 1, 3))
    return [cojac, jac, compatibility_relation(family)]


def compatibility_relation(family=LIEB):
    mk = lieb if family == LIEB else lieb_inf
    cob, br = mk(2, 1), mk(1, 2)
    r = PropElement((2, 2))
    r.add_graph(two_vertex(br, cob, ["e"], [1, 2], [1, 2], ["e"], 2, 2))
    r.add_graph(two_vertex(cob, br, [1, "e"], [1], [2], ["e", 2], 2, 2), -1)
    r.add_graph(two_vertex(cob, br, [1, "e"], [2], [2], ["e", 1], 2, 2))
    r.add_graph(two_vertex(cob, br, [2, "e"], [2], [1], ["e", 1], 2, 2), -1)
    r.add_graph(two_vertex(cob, br, [2, "e"], [1], [1], ["e", 2], 2, 2))
    return r


def assb_relations():
    """Associativity, coassociativity and multiplicativity of the coproduct."""
    mu, de = assb(1, 2), assb(2, 1)
    assoc = PropElement((1, 3))
    assoc.add_graph(two_vertex(mu, mu, ["e"], [1, 2], [1], ["e", 3], 1, 3))
    assoc.add_graph(two_vertex(mu, mu, ["e"], [2, 3], [1], [1, "e"], 1, 3), -1)
    coassoc = PropElement((3, 1))
    coassoc.add_graph(two_vertex(de, de, ["e", 3], [1], [1, 2], ["e"], 3, 1))
    coassoc.add_graph(two_vertex(de, de, [1, "e"], [1], [2, 3], ["e"], 3, 1), -1)
    compat = PropElement((2, 2))
    compat.add_graph(two_vertex(mu, de, ["e"], [1, 2], [1, 2], ["e"], 2, 2))
    # D1, D2, M1, M2: M1 takes the first halves, M2 the second halves
    four = Graph([de, de, mu, mu],
                 [[(2, 0), (3, 0)], [(2, 1), (3, 1)], [(-1, 1)], [(-1, 2)]],
                 [[(-1, 1)], [(-1, 2)], [(0, 0), (1, 0)], [(0, 1), (1, 1)]], 2, 2)
    compat.add_graph(four, -1)
    return [assoc, coassoc, compat]


def relations_for(family):
    if family == LIEB:
        return lie_bialgebra_relations(LIEB)
    if family == ASSB:
        return assb_relations()
    raise StructureError(f"no relations known for {family}")


def generators_for(family):
    if family == LIEB:
        return [lieb(2, 1), lieb(1, 2)]
    if family == ASSB:
        return [assb(2, 1), assb(1, 2)]
    raise StructureError(f"no quotient prop for {family}")


def ideal_span(family, biarity, t):
    """Relations grafted into every free graph, as PropElements inside ``t``."""
    gens = generators_for(family)
    rels = relations_for(family)
    out = []
    for rel in rels:
        m, n = rel.biarity
        ph = relation_vertex(m, n)
        # the placeholder stands for at least the smallest relation term
        rmin = min(len(g.vertices) for g in rel.terms)
        slack = t.max_vertices - rmin + 1
        if slack < 1:
            continue
        placed = enumerate_graphs(gens + [ph], biarity[0], biarity[1], slack,
                                  max_genus=t.max_genus)
        for g in placed:
            if sum(1 for c in g.vertices if c.family == RELATION) != 1:
                continue
            v = next(i for i, c in enumerate(g.vertices) if c.family == RELATION)
            el = substitute_vertex(g, v, rel)
            if el and all(t.admits(h) for h in el.terms):
                out.append(el)
    return out


class QuotientBasis:
    """Basis of a quotient space plus the projection from free graphs."""

    def __init__(self, family, biarity, truncation, free, basis, projection):
        self.family = family
        self.biarity = biarity
        self.truncation = truncation
        self.free = free
        self.basis = basis
        self.projection = projection  # SparseMatrix: rows basis, cols free

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self):
        return len(self.basis)

    def project(self, x):
        """Coordinates of PropElement ``x`` in the quotient basis."""
        index = {g: i for i, g in enumerate(self.free)}
        vec = {}
        for g, c in x.terms.items():
            if g not in index:
                raise TruncationError("graph outside the quotient window", g)
            for r, v in self.projection.column(index[g]).items():
                vec[r] = vec.get(r, ZERO) + v * c
        return {r: v for r, v in vec.items() if v}


def _quotient_once(family, biarity, t):
    from .homology import SparseMatrix, row_reduce
    free = free_basis(generators_for(family), biarity, t)
    index = {g: i for i, g in enumerate(free)}
    rows = []
    for el in ideal_span(family, biarity, t):
        rows.append({index[g]: c for g, c in el.terms.items()})
    # prefer pivots on graphs with more vertices, so the quotient basis
    # keeps the smallest representatives
    order = sorted(range(len(free)), key=lambda i: (-len(free[i].vertices), free[i].key()))
    rank_pos = {col: r for r, col in enumerate(order)}
    ech, pivots = row_reduce(rows, key=lambda col: rank_pos[col])
    pivset = set(pivots)
    basis_cols = [i for i in range(len(free)) if i not in pivset]
    bpos = {col: r for r, col in enumerate(basis_cols)}
    proj = SparseMatrix(len(basis_cols), len(free))
    for col in basis_cols:
        proj.set(bpos[col], col, ONE)
    for row, piv in zip(ech, pivots):
        for col, v in row.items():
            if col != piv:
                proj.set(bpos[col], piv, -v)
    return QuotientBasis(family, biarity, t, free, [free[i] for i in basis_cols], proj)


def quotient_basis(family, biarity, t, check_saturation=True):
    """Basis of the quotient prop at ``biarity`` inside truncation ``t``.

    The quotient is recomputed with one more vertex allowed; if the
    dimension changes the window is not saturated and TruncationError is
    raised.
    """
    q = _quotient_once(family, biarity, t)
    if check_saturation:
        bigger = Truncation(t.max_vertices + 1, t.max_genus, t.max_total_legs)
        q2 = _quotient_once(family, biarity, bigger)
        if q2.dim != q.dim:
            raise TruncationError(
                f"quotient of {family} at {biarity} not saturated: dim {q.dim} with "
                f"{t.max_vertices} vertices, {q2.dim} with {t.max_vertices + 1}")
    return q
