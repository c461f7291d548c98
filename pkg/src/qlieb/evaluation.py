"""Evaluation of decorated graphs in the endomorphism prop of a vector space.

Only ungraded V is supported: every vertex value is an even map, so
contracting along edges needs no Koszul signs.  A value for a corolla
with m outputs and n inputs is a numpy object array with m output axes
followed by n input axes; the result of evaluating a graph with p
outputs and q inputs has its axes ordered by leg label, outputs first.
"""
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .exact import StructureError, perm_sign
from .graphs import ANTISYMMETRIC

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def zeros(shape):
    return np.full(shape, Fraction(0), dtype=object)


def as_fraction_array(a):
    arr = np.asarray(a, dtype=object)
    out = zeros(arr.shape)
    for idx in np.ndindex(arr.shape):
        out[idx] = Fraction(arr[idx])
    return out


class Representation:
    """Values of generators in End(V) for an ungraded V of dimension ``dim``.

    ``hbar_weight`` is the power of the formal parameter attached to each
    vertex: an integer for all corollas or a dict keyed by corolla.
    """

    def __init__(self, dim, values, hbar_weight=1, check=True):
        self.dim = dim
        self.values = {c: as_fraction_array(v) for c, v in values.items()}
        self.hbar_weight = hbar_weight
        if check:
            for c, v in self.values.items():
                if v.shape != (dim,) * (c.m + c.n):
                    raise StructureError(f"value of {c} has shape {v.shape}")
                # End(V) sits in degree 0, so other degrees must map to zero
                if c.degree != 0 and any(x != 0 for x in v.flat):
                    raise StructureError(f"{c} has degree {c.degree} but a nonzero value")
                if c.family in ANTISYMMETRIC and not _antisymmetric(v, c.m):
                    raise StructureError(f"value of {c} is not antisymmetric")

    def weight(self, c):
        if isinstance(self.hbar_weight, dict):
            return self.hbar_weight.get(c, 1)
        return self.hbar_weight

    def value(self, c):
        return self.values.get(c)


def _antisymmetric(v, m):
    n = v.ndim - m
    for lo, size in ((0, m), (m, n)):
        for k in range(size - 1):
            axes = list(range(v.ndim))
            axes[lo + k], axes[lo + k + 1] = axes[lo + k + 1], axes[lo + k]
            if any(x != 0 for x in (v + v.transpose(axes)).flat):
                return False
    return True


def _einsum_spec(g):
    """Index strings for the vertex arrays and the result."""
    letter = {}
    nxt = iter(_LETTERS)
    for u, k, w, j in g.edges():
        letter[("e", u, k)] = next(nxt)
    outs = {lab: next(nxt) for lab in range(1, g.p + 1)}
    ins = {lab: next(nxt) for lab in range(1, g.q + 1)}
    specs = []
    for v in range(len(g.vertices)):
        s = ""
        for k, (w, x) in enumerate(g.outs[v]):
            s += outs[x] if w < 0 else letter[("e", v, k)]
        for j, (w, x) in enumerate(g.ins[v]):
            s += ins[x] if w < 0 else letter[("e", w, x)]
        specs.append(s)
    res = "".join(outs[lab] for lab in range(1, g.p + 1)) + "".join(ins[lab] for lab in range(1, g.q + 1))
    return specs, res


def evaluate_graph(g, rho, hbar_order=None):
    """Composite of the vertex values along the edges of ``g``.

    Returns ``{power: array}`` where power is the total hbar weight of the
    vertices; the map is dropped when the power exceeds ``hbar_order``.
    A corolla without a value evaluates to zero.
    """
    power = sum(rho.weight(c) for c in g.vertices)
    if hbar_order is not None and power > hbar_order:
        return {}
    arrays = [rho.value(c) for c in g.vertices]
    if any(a is None for a in arrays):
        return {}
    val = contract_arrays(g, arrays)
    if all(x == 0 for x in val.flat):
        return {}
    return {power: val}


def contract_arrays(g, arrays):
    """Contract one array per vertex of ``g`` along its edges."""
    specs, res = _einsum_spec(g)
    return np.asarray(np.einsum(",".join(specs) + "->" + res, *arrays), dtype=object)


def evaluate_element(x, rho, hbar_order=None):
    """Linear extension of evaluate_graph to a PropElement."""
    total = {}
    for g, cf in x.items():
        for k, v in evaluate_graph(g, rho, hbar_order).items():
            total[k] = total[k] + cf * v if k in total else cf * v
    return {k: v for k, v in total.items() if any(y != 0 for y in v.flat)}


def evaluate_sequential(g, rho, order):
    """Evaluate by contracting the vertices one at a time in ``order``.

    Independent of ``evaluate_graph``'s single einsum; used to check that
    the result does not depend on the contraction order.
    """
    specs, res = _einsum_spec(g)
    arrays = [rho.value(c) for c in g.vertices]
    acc, acc_spec = None, ""
    for step, v in enumerate(order):
        a, s = arrays[v], specs[v]
        if acc is None:
            acc, acc_spec = a, s
            continue
        remaining = "".join(specs[w] for w in order[step + 1:]) + res
        keep = [ch for ch in dict.fromkeys(acc_spec + s) if ch in remaining]
        out = "".join(keep)
        acc = np.asarray(np.einsum(f"{acc_spec},{s}->{out}", acc, a), dtype=object)
        acc_spec = out
    return np.asarray(np.einsum(f"{acc_spec}->{res}", acc), dtype=object)


def evaluate_bruteforce(g, rho):
    """Sum over all assignments of basis indices to edges and legs."""
    specs, res = _einsum_spec(g)
    letters = sorted(set("".join(specs)))
    arrays = [rho.value(c) for c in g.vertices]
    out = zeros((rho.dim,) * len(res))
    for assign in product(range(rho.dim), repeat=len(letters)):
        val = dict(zip(letters, assign))
        term = Fraction(1)
        for a, s in zip(arrays, specs):
            term *= a[tuple(val[ch] for ch in s)]
            if not term:
                break
        if term:
            out[tuple(val[ch] for ch in res)] += term
    return out


def antisymmetrize(t, m):
    """Antisymmetrization of a tensor in its first m and last n axes (no 1/k!)."""
    n = t.ndim - m
    res = zeros(t.shape)
    for po in permutations(range(m)):
        for pi in permutations(range(n)):
            axes = list(po) + [m + i for i in pi]
            res = res + perm_sign(po) * perm_sign(pi) * t.transpose(axes)
    return res


def lie_bialgebra_representation(bracket, cobracket, family="LIEB_INF", hbar_weight=1):
    """Representation sending the (1,2) and (2,1) generators to a bracket
    (array [k, a, b]) and a cobracket (array [i, j, k])."""
    from .graphs import lieb, lieb_inf
    mk = lieb_inf if family == "LIEB_INF" else lieb
    dim = np.asarray(bracket, dtype=object).shape[0]
    return Representation(dim, {mk(1, 2): bracket, mk(2, 1): cobracket}, hbar_weight)

