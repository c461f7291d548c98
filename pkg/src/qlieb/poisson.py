"""The Poisson algebra of polynomials in shifted coordinates and the
Maurer-Cartan dictionary for strongly homotopy Lie bialgebras.

Symbols are ``("x", j)`` for the shifted dual coordinate attached to the
basis vector v_j (an input) and ``("p", i)`` for the shifted vector v_i
(an output).  With |v| the degree of a basis vector,
|x_j| = 1 - |v_j| and |p_i| = 1 + |v_i|; on ungraded V both are odd.
The bracket has degree -2, pairs {p_i, x_i} = 1 and is extended as a
biderivation.  Monomials are stored in normal form: sorted symbols
(all x before all p), with odd symbols appearing at most once.
"""
from fractions import Fraction
from itertools import permutations
from math import factorial

import numpy as np

from .exact import ONE, StructureError, koszul_sign, sort_with_sign

DEFAULT_ORDER_CAP = 6


def _key(sym):
    return (0 if sym[0] == "x" else 1, sym[1])


class PoissonElement:
    """Finite sum of normal-form monomials with rational coefficients."""

    def __init__(self, degrees, terms=None, order_cap=DEFAULT_ORDER_CAP):
        self.degrees = tuple(degrees)
        self.order_cap = order_cap
        self.terms = {}
        for mono, c in (terms or {}).items():
            self._add_word(list(mono), Fraction(c))

    # -- symbols ----------------------------------------------------------
    @property
    def dim(self):
        return len(self.degrees)

    def symbol_degree(self, sym):
        kind, i = sym
        return 1 - self.degrees[i] if kind == "x" else 1 + self.degrees[i]

    def mono_degree(self, mono):
        return sum(self.symbol_degree(s) for s in mono)

    def normalize(self, word):
        """(normal monomial, sign) of a word of symbols; sign 0 if it vanishes."""
        degs = [self.symbol_degree(s) for s in word]
        srt, sign = sort_with_sign(list(word), degs, key=_key)
        for a, b in zip(srt, srt[1:]):
            if a == b and self.symbol_degree(a) % 2:
                return tuple(srt), 0
        return tuple(srt), sign

    def _add_word(self, word, c):
        if not c or len(word) > self.order_cap:
            return
        mono, s = self.normalize(word)
        if not s:
            return
        v = self.terms.get(mono, 0) + s * c
        if v:
            self.terms[mono] = v
        else:
            self.terms.pop(mono, None)

    # -- constructors -------------------------------------------------------
    def _new(self, terms=None):
        return PoissonElement(self.degrees, terms, self.order_cap)

    @classmethod
    def monomial(cls, degrees, word, coeff=1, order_cap=DEFAULT_ORDER_CAP):
        el = cls(degrees, order_cap=order_cap)
        el._add_word(list(word), Fraction(coeff))
        return el

    @classmethod
    def x(cls, degrees, j, order_cap=DEFAULT_ORDER_CAP):
        return cls.monomial(degrees, [("x", j)], order_cap=order_cap)

    @classmethod
    def p(cls, degrees, i, order_cap=DEFAULT_ORDER_CAP):
        return cls.monomial(degrees, [("p", i)], order_cap=order_cap)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.degrees != other.degrees:
            raise StructureError("elements over different spaces")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        res = self._new(self.terms)
        for mono, c in other.terms.items():
            res._add_word(list(mono), c)
        return res

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PoissonElement):
            self._check(other)
            res = self._new()
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    res._add_word(list(a) + list(b), ca * cb)
            return res
        other = Fraction(other)
        return self._new({m: other * c for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, PoissonElement) and self.degrees == other.degrees \
            and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{_word_text(m)}" for m, c in self.items())

    def items(self):
        return sorted(self.terms.items(), key=lambda t: [_key(s) for s in t[0]])

    # -- gradings -----------------------------------------------------------
    def degrees_present(self):
        return sorted({self.mono_degree(m) for m in self.terms})

    def degree(self):
        ds = self.degrees_present()
        if len(ds) > 1:
            raise StructureError(f"element is not homogeneous: degrees {ds}")
        return ds[0] if ds else None

    def by_order(self):
        res = {}
        for m, c in self.terms.items():
            res.setdefault(len(m), self._new())._add_word(list(m), c)
        return dict(sorted(res.items()))

    def project(self):
        """Keep monomials with at least one x and at least one p."""
        return self._new({m: c for m, c in self.terms.items()
                          if any(s[0] == "x" for s in m) and any(s[0] == "p" for s in m)})

    def truncate(self, order_cap):
        return PoissonElement(self.degrees, self.terms, order_cap)

    def to_json(self):
        return {"degrees": list(self.degrees), "order_cap": self.order_cap,
                "terms": [[[list(s) for s in m], str(c)] for m, c in self.items()]}

    @classmethod
    def from_json(cls, obj):
        terms = {tuple((k, i) for k, i in m): Fraction(c) for m, c in obj["terms"]}
        return cls(obj["degrees"], terms, obj.get("order_cap", DEFAULT_ORDER_CAP))


def _word_text(m):
    return "".join(f"{k}{i + 1}" for k, i in m) or "1"


def generator_pairing(el, a, b):
    """{a, b} for single symbols a, b."""
    if a[1] != b[1] or a[0] == b[0]:
        return 0
    if a[0] == "p":
        return ONE
    return -koszul_sign([1, 0], [el.symbol_degree(a), el.symbol_degree(b)])


def poisson_bracket(a, b):
    """Biderivation extension of the generator pairing, degree -2."""
    a._check(b)
    res = a._new()
    for A, ca in a.terms.items():
        dA = [a.symbol_degree(s) for s in A]
        for B, cb in b.terms.items():
            dB = [a.symbol_degree(s) for s in B]
            for i, ai in enumerate(A):
                # move a_i to the right end of A
                sa = (-1) ** ((dA[i] * sum(dA[i + 1:])) % 2)
                for j, bj in enumerate(B):
                    g = generator_pairing(a, ai, bj)
                    if not g:
                        continue
                    # move b_j to the front of B
                    sb = (-1) ** ((dB[j] * sum(dB[:j])) % 2)
                    word = list(A[:i] + A[i + 1:]) + list(B[:j] + B[j + 1:])
                    res._add_word(word, sa * sb * g * ca * cb)
    return res


def mc_residual(gamma):
    """{gamma, gamma} for a homogeneous gamma of degree 3."""
    d = gamma.degree()
    if d not in (None, 3):
        raise StructureError(f"Maurer-Cartan element must have degree 3, got {d}")
    return poisson_bracket(gamma, gamma)


# -- structures ------------------------------------------------------------

class ShLieBialgStructure:
    """Tensors T[(m, n)] with m output axes then n input axes.

    Each tensor is graded antisymmetric: permuting outputs (inputs)
    multiplies by the Koszul sign of the p- (x-) symbol degrees, which is
    the ordinary sign on ungraded V.  ``tensors[(1, 1)]`` is the
    differential d on V.
    """

    def __init__(self, degrees, tensors=None):
        self.degrees = tuple(degrees)
        self.tensors = {}
        for (m, n), t in (tensors or {}).items():
            arr = np.asarray(t, dtype=object)
            arr = np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr
            if arr.shape != (len(self.degrees),) * (m + n):
                raise StructureError(f"tensor {(m, n)} has shape {arr.shape}")
            if any(x != 0 for x in arr.flat):
                self.tensors[(m, n)] = arr

    @property
    def dim(self):
        return len(self.degrees)

    @property
    def d(self):
        return self.tensors.get((1, 1))

    def __eq__(self, other):
        return (isinstance(other, ShLieBialgStructure) and self.degrees == other.degrees
                and self.tensors.keys() == other.tensors.keys()
                and all((self.tensors[k] == other.tensors[k]).all() for k in self.tensors))

    def to_json(self):
        return {"degrees": list(self.degrees),
                "tensors": [[m, n, [str(x) for x in t.flat]] for (m, n), t in sorted(self.tensors.items())]}

    @classmethod
    def from_json(cls, obj):
        dim = len(obj["degrees"])
        tensors = {}
        for m, n, flat in obj["tensors"]:
            arr = np.array([Fraction(x) for x in flat], dtype=object).reshape((dim,) * (m + n))
            tensors[(m, n)] = arr
        return cls(obj["degrees"], tensors)


def lie_bialgebra_structure(bracket, cobracket, d=None):
    """Structure on ungraded V from a bracket [k, a, b] and cobracket [i, j, k]."""
    bracket = np.asarray(bracket, dtype=object)
    dim = bracket.shape[0]
    tensors = {(1, 2): bracket, (2, 1): np.asarray(cobracket, dtype=object)}
    if d is not None:
        tensors[(1, 1)] = d
    return ShLieBialgStructure((0,) * dim, tensors)


def rep_to_gamma(S, order_cap=DEFAULT_ORDER_CAP):
    """gamma = sum over (m, n) of T^I_J x_J p_I / (m! n!)."""
    gamma = PoissonElement(S.degrees, order_cap=order_cap)
    for (m, n), t in sorted(S.tensors.items()):
        w = Fraction(1, factorial(m) * factorial(n))
        for idx in np.ndindex(t.shape):
            c = t[idx]
            if c:
                word = [("x", j) for j in idx[m:]] + [("p", i) for i in idx[:m]]
                gamma._add_word(word, w * c)
    return gamma


def gamma_to_rep(gamma):
    """Inverse of rep_to_gamma by coefficient extraction."""
    el = gamma
    tensors = {}
    for mono, c in el.terms.items():
        xs = [s[1] for s in mono if s[0] == "x"]
        ps = [s[1] for s in mono if s[0] == "p"]
        if not xs or not ps:
            raise StructureError(f"monomial {_word_text(mono)} lacks an x or a p symbol")
        m, n = len(ps), len(xs)
        t = tensors.setdefault((m, n), np.full((el.dim,) * (m + n), Fraction(0), dtype=object))
        mult = 1
        for s in set(mono):
            mult *= factorial(mono.count(s))
        base = c * mult
        xdeg = [el.symbol_degree(("x", j)) for j in xs]
        pdeg = [el.symbol_degree(("p", i)) for i in ps]
        for po in set(permutations(range(m))):
            for pi in set(permutations(range(n))):
                I = tuple(ps[k] for k in po)
                J = tuple(xs[k] for k in pi)
                # sign of sorting the permuted word back to normal form
                s = koszul_sign(po, pdeg) * koszul_sign(pi, xdeg)
                t[I + J] = s * base
    return ShLieBialgStructure(el.degrees, tensors)


def bialg_relations_residual(bracket, cobracket):
    """(Jacobi, co-Jacobi, compatibility) residual tensors on ungraded V.

    bracket[k, a, b] is the e_k coefficient of [e_a, e_b];
    cobracket[i, j, k] the e_i (x) e_j coefficient of Delta(e_k).
    """
    B = np.asarray(bracket, dtype=object)
    C = np.asarray(cobracket, dtype=object)
    T = np.einsum("kab,lkc->labc", B, B)
    jac = T + T.transpose(0, 2, 3, 1) + T.transpose(0, 3, 1, 2)
    U = np.einsum("kcl,abk->abcl", C, C)
    cojac = U + U.transpose(1, 2, 0, 3) + U.transpose(2, 0, 1, 3)
    comp = (np.einsum("kab,ijk->ijab", B, C)
            - np.einsum("ujb,iau->ijab", C, B) - np.einsum("ivb,jav->ijab", C, B)
            + np.einsum("uja,ibu->ijab", C, B) + np.einsum("iva,jbv->ijab", C, B))
    return jac, cojac, comp


def is_zero_tensor(t):
    return all(x == 0 for x in np.asarray(t).flat)


def two_dim_example():
    """[e1, e2] = e2, Delta(e2) = e1 ^ e2, Delta(e1) = 0 (0-based arrays)."""
    B = np.full((2, 2, 2), Fraction(0), dtype=object)
    B[1, 0, 1], B[1, 1, 0] = Fraction(1), Fraction(-1)
    C = np.full((2, 2, 2), Fraction(0), dtype=object)
    C[0, 1, 1], C[1, 0, 1] = Fraction(1), Fraction(-1)
    return B, C


def random_monomial_element(rng, degrees, max_order, nterms, order_cap=DEFAULT_ORDER_CAP):
    """Random element of the projected algebra with monomials of one degree."""
    dim = len(degrees)
    syms = [("x", j) for j in range(dim)] + [("p", i) for i in range(dim)]
    el = PoissonElement(degrees, order_cap=order_cap)
    target = None
    tries = 0
    while len(el.terms) < nterms and tries < 200:
        tries += 1
        k = rng.randint(2, max_order)
        word = [rng.choice(syms) for _ in range(k)]
        if not any(s[0] == "x" for s in word) or not any(s[0] == "p" for s in word):
            continue
        deg = el.mono_degree(word)
        if target is None:
            target = deg
        if deg != target:
            continue
        el._add_word(word, Fraction(rng.randint(-3, 3)))
    return el

