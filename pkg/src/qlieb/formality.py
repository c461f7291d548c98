"""Morphism data from bunched corollas to the resolution of Lie bialgebras.

* ``f1`` turns a polynomial into a symbolic polydifferential operator:
  singleton-bunch corollas decorated by basis indices.
* A ``MorphismTable`` assigns to each bunched generator an element of
  the free prop on LieB_inf corollas; ``evaluate_F`` evaluates it on
  structures on V.
* ``lift_step`` and ``lift_inductive`` build the table weight by weight by
  solving delta(F(e)) = F(d e) with exact linear algebra.
"""
from fractions import Fraction
from itertools import permutations

from .exact import ZERO, StructureError, koszul_sign, perm_sign
from .graphs import DEFQ, Corolla, Graph, corolla_graph, defq, lieb_inf
from .homology import NO_SOLUTION, ChainWindow, solve_preimage
from .prop import ConfigurationError, PropElement, Truncation, TruncationError, free_basis, substitute_vertex
from .complexes.defq import d1_defq, dgs_poly_split
from .complexes.lieb import delta_liebinfty, lieb_inf_generators
from .evaluation import contract_arrays


class IntegrityError(RuntimeError):
    """The supplied differential data is inconsistent (d^2 != 0)."""

    def __init__(self, message, corolla=None):
        super().__init__(message)
        self.corolla = corolla


# -- F1: polynomials to polydifferential operators ---------------------------

class PolyOp:
    """Sum of one-vertex bunched graphs decorated by basis indices.

    A key is (graph, outs, ins): ``outs[l-1]`` is the basis index on output
    leg l and ``ins[l-1]`` the one on input leg l.
    """

    def __init__(self, terms=None):
        self.terms = {}
        for key, c in (terms or {}).items():
            self.add(*key, c)

    def add(self, g, outs, ins, c):
        key = (g, tuple(outs), tuple(ins))
        v = self.terms.get(key, ZERO) + Fraction(c)
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, PolyOp) and self.terms == other.terms

    def __add__(self, other):
        res = PolyOp(self.terms)
        for (g, o, i), c in other.terms.items():
            res.add(g, o, i, c)
        return res

    def __mul__(self, s):
        return PolyOp({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (t[0][0].key(), t[0][1], t[0][2]))

    def graphs(self):
        return sorted({g for g, _, _ in self.terms})


def f1(f):
    """Monomial x_J p_I maps to the singleton-bunch corolla with |I| outputs
    and |J| inputs, decorated by I and J, with the same coefficient."""
    res = PolyOp()
    for mono, c in f.terms.items():
        outs = [i for k, i in mono if k == "p"]
        ins = [j for k, j in mono if k == "x"]
        if not outs or not ins:
            raise StructureError("f1 needs at least one x and one p in every monomial")
        g = corolla_graph(defq((1,) * len(outs), (1,) * len(ins), plus=True))
        res.add(g, outs, ins, c)
    return res


def poly_split(op):
    """dgs_poly_split applied termwise to a PolyOp; leg decorations ride along."""
    res = PolyOp()
    for (g, outs, ins), c in op.terms.items():
        for h, hc in dgs_poly_split(g).items():
            res.add(h, outs, ins, c * hc)
    return res


# -- morphism tables -----------------------------------------------------------

def weight(c):
    return c.m + c.n - 3


class MorphismTable:
    """Values of a prop morphism on bunched generators (standard leg labels)."""

    def __init__(self, values=None, certificates=None):
        self.values = dict(values or {})
        self.certificates = dict(certificates or {})
        for c, v in self.values.items():
            self._validate(c, v)

    @staticmethod
    def _validate(c, v):
        if tuple(v.biarity) != (c.m, c.n):
            raise StructureError(f"value of {c} has biarity {v.biarity}")
        for g in v.terms:
            if g.degree != c.degree:
                raise StructureError(f"value of {c} contains a graph of degree {g.degree}, expected {c.degree}")

    @property
    def weight_reach(self):
        return max((weight(c) for c in self.values), default=-1)

    def __getitem__(self, c):
        if c not in self.values:
            raise ConfigurationError(c)
        return self.values[c]

    def set(self, c, v):
        self._validate(c, v)
        self.values[c] = v

    def copy(self):
        return MorphismTable(self.values, self.certificates)

    def apply(self, x):
        """Image of a PropElement over bunched graphs: every vertex replaced
        by its value (degree 0 substitution, no signs)."""
        if isinstance(x, Graph):
            x = PropElement.from_graph(x)
        res = PropElement(x.biarity)
        for g, coeff in x.terms.items():
            partial = PropElement.from_graph(g, coeff)
            for v in reversed(range(len(g.vertices))):
                val = self[g.vertices[v]]
                nxt = PropElement(x.biarity)
                for h, hc in partial.terms.items():
                    for r, rc in substitute_vertex(h, v, val).terms.items():
                        nxt._add_canonical(r, hc * rc)
                partial = nxt
            res = res + partial
        return res

    def to_json(self):
        return {
            "values": [{"corolla": [c.family, list(c.outs), list(c.ins), c.degree],
                        "value": v.to_json()} for c, v in sorted(self.values.items())],
            "weight_reach": self.weight_reach,
            "certificates": [{"corolla": [c.family, list(c.outs), list(c.ins), c.degree], **cert}
                             for c, cert in sorted(self.certificates.items())],
        }

    @classmethod
    def from_json(cls, obj):
        vals = {}
        for item in obj["values"]:
            f, o, i, d = item["corolla"]
            vals[Corolla(f, tuple(o), tuple(i), d)] = PropElement.from_json(item["value"])
        return cls(vals)


def claim_ii_seed():
    """Weight-0 table: each three-bunch singleton corolla goes to the
    LieB_inf generator of the same biarity."""
    vals = {}
    for outs, ins in (((1, 1), (1,)), ((1,), (1, 1))):
        c = defq(outs, ins, plus=False)
        vals[c] = PropElement.from_graph(corolla_graph(lieb_inf(c.m, c.n)))
    return MorphismTable(vals)


def bunched_generators(w, family=DEFQ):
    """All bunched corolla types of weight w, fewest bunches first."""
    total = w + 3
    res = []
    for m in range(1, total):
        n = total - m
        for outs in _compositions(m):
            for ins in _compositions(n):
                if family == DEFQ and len(outs) + len(ins) < 3:
                    continue
                res.append(defq(outs, ins, plus=(family != DEFQ)))
    return sorted(res, key=lambda c: (len(c.outs) + len(c.ins), c.key()))


def _compositions(k):
    if k == 0:
        return [()]
    return [(first,) + rest for first in range(1, k + 1) for rest in _compositions(k - first)]


# -- evaluation ------------------------------------------------------------------

def arg_degree(f):
    """Parity of a structure as an element of the deformation complex."""
    ds = {(m + n - 2) % 2 for (m, n) in f.tensors}
    if len(ds) > 1:
        raise StructureError("argument mixes components of both parities")
    return ds.pop() if ds else 0


def evaluate_F(table, e, args, hbar_order=None):
    """Value of the k-th morphism component on ``args`` at the corolla ``e``.

    Sums over graphs with k vertices in the table value of ``e`` and over
    assignments of the arguments to the vertices.  The arguments carry
    their degree m + n - 2 in the deformation complex and the sum is
    graded antisymmetric in them.  Returns ``{hbar power: array}``; arguments with a
    (1,1) component contribute zero.
    """
    k = len(args)
    if any((1, 1) in f.tensors for f in args):
        return {}
    val = table[e]
    degs = [arg_degree(f) for f in args]
    total = {}
    for g, coeff in val.terms.items():
        if len(g.vertices) != k:
            continue
        power = len(g.vertices)
        if hbar_order is not None and power > hbar_order:
            continue
        for sigma in permutations(range(k)):
            arrays = []
            for v, c in enumerate(g.vertices):
                arrays.append(args[sigma[v]].tensors.get((c.m, c.n)))
            if any(a is None for a in arrays):
                continue
            inv = [0] * k
            for v, i in enumerate(sigma):
                inv[i] = v
            # graded antisymmetric in the f's: sign of sigma times Koszul sign
            s = perm_sign(inv) * koszul_sign(inv, degs)
            arr = contract_arrays(g, arrays) * (coeff * s)
            total[power] = total[power] + arr if power in total else arr
    return {p: a for p, a in total.items() if any(x != 0 for x in a.flat)}


# -- L-infinity relations -----------------------------------------------------------

class LInfinityData:
    """Pluggable operations for the L-infinity morphism relations.

    ``mu[r]`` and ``F[k]`` take a list of arguments; ``bracket`` is the
    domain bracket and ``domain_d`` an optional domain differential.
    ``degree`` gives the (shifted) parity used for Koszul signs;
    ``bracket_sign`` is the sign of the bracket terms in the residual.
    """

    def __init__(self, mu, F, bracket, zero, degree=lambda a: 0, domain_d=None, bracket_sign=1):
        self.mu = dict(mu)
        self.F = dict(F)
        self.bracket = bracket
        self.zero = zero
        self.degree = degree
        self.domain_d = domain_d
        self.bracket_sign = bracket_sign


def _set_partitions(items):
    """Unordered set partitions, blocks ordered by their first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _op(table, kind, r):
    if r not in table:
        raise ConfigurationError(f"{kind}_{r} not supplied")
    return table[r]


def linf_residual(L, k, fs):
    """mu-side minus F-side of the arity-k morphism relation.

    mu-side: sum over set partitions into blocks B_1..B_r of
    mu_r(F_|B_1|(f_B_1), ..., F_|B_r|(f_B_r)) with Koszul signs.
    F-side: F_k applied after the domain differential, and bracket_sign
    times F_(k-1)({f_i, f_j}, rest) over pairs i < j.
    """
    fs = list(fs)
    degs = [L.degree(f) % 2 for f in fs]
    res = L.zero
    for part in _set_partitions(list(range(k))):
        blocks = [sorted(b) for b in sorted(part, key=min)]
        order = [i for b in blocks for i in b]
        s = _reorder_sign(order, degs)
        vals = [_op(L.F, "F", len(b))([fs[i] for i in b]) for b in blocks]
        res = res + s * _op(L.mu, "mu", len(blocks))(vals)
    if L.domain_d is not None:
        for i in range(k):
            args = fs[:i] + [L.domain_d(fs[i])] + fs[i + 1:]
            s = -1 if sum(degs[:i]) % 2 else 1
            res = res - s * _op(L.F, "F", k)(args)
    for i in range(k):
        for j in range(i + 1, k):
            rest = [x for x in range(k) if x not in (i, j)]
            s = _reorder_sign([i, j] + rest, degs)
            args = [L.bracket(fs[i], fs[j])] + [fs[x] for x in rest]
            res = res + L.bracket_sign * s * _op(L.F, "F", k - 1)(args)
    return res


def _reorder_sign(order, degs):
    pos = [0] * len(order)
    for new, old in enumerate(order):
        pos[old] = new
    return int(koszul_sign(pos, degs))


# -- lifting -------------------------------------------------------------------------

def lift_window(biarity, degree, truncation):
    """Chain window for delta from ``degree`` (graphs within ``truncation``)
    to ``degree + 1`` (one more vertex allowed)."""
    # a vertex has at most p + q + 2 * genus legs
    types = lieb_inf_generators(sum(biarity) + 2 * truncation.max_genus)
    src = free_basis(types, biarity, truncation, degree=degree)
    big = Truncation(truncation.max_vertices + 1, truncation.max_genus, truncation.max_total_legs)
    tgt = free_basis(types, biarity, big, degree=degree + 1)
    return ChainWindow({degree: src, degree + 1: tgt}, delta_liebinfty,
                       name=f"LIEB_INF{tuple(biarity)}")


def lift_step(window, y, degree, pi_projection=None):
    """Solve delta(e) = y inside ``window``; ``degree`` is the degree of e."""
    if pi_projection is not None and pi_projection(y):
        raise IntegrityError("target does not vanish under the projection")
    if delta_liebinfty(y):
        raise IntegrityError("target is not delta-closed")
    if not y:
        return PropElement(y.biarity)
    d = window.matrix(degree)
    x = solve_preimage(d, window.coords(degree + 1, y))
    if x is NO_SOLUTION:
        raise TruncationError(f"{window.name}: no preimage inside the truncation")
    if not x:
        return PropElement(y.biarity)
    return window.element(degree, x)


def default_d_table(e):
    return d1_defq(e)


def certify(table, e, d_table):
    y = table.apply(d_table(e))
    lhs = delta_liebinfty(table[e])
    return {"delta_y_zero": not delta_liebinfty(y), "delta_F_equals_y": (lhs - y) == 0}


def lift_inductive(seed, d_table=default_d_table, max_weight=1, truncation=None):
    """Extend ``seed`` weight by weight; every entry gets a certificate."""
    truncation = truncation or Truncation(max_vertices=2, max_genus=1)
    table = seed.copy()
    # seed entries of higher weight are certified at their own weight
    for c in list(table.values):
        if weight(c) == 0:
            table.certificates[c] = certify(table, c, d_table)
    windows = {}
    for w in range(1, max_weight + 1):
        for e in bunched_generators(w):
            if e in table.values:
                table.certificates[e] = certify(table, e, d_table)
                continue
            y = table.apply(d_table(e))
            if delta_liebinfty(y):
                raise IntegrityError(f"delta(F(d e)) != 0 at {e}", e)
            key = (e.biarity, e.degree)
            if key not in windows:
                windows[key] = lift_window(e.biarity, e.degree, truncation)
            val = lift_step(windows[key], y, e.degree)
            table.set(e, val)
            cert = certify(table, e, d_table)
            if not all(cert.values()):
                raise IntegrityError(f"certificate failed at {e}", e)
            table.certificates[e] = cert
    return table
