"""The differential of the minimal resolution of Lie bialgebras and its
"+" extension by a degree-one (1,1) generator."""
from ..exact import ONE, MINUS_ONE, StructureError, enumerate_shuffles, shuffle_sign
from ..graphs import LIEB_INF, LIEB_PLUS, Graph, is_valid_corolla, lieb_inf, lieb_plus
from ..prop import PropElement, derivation_apply
from .profiles import DELTA_LIEB_INF, DELTA_PLUS, profile


def _mk(family, m, n):
    return lieb_inf(m, n) if family == LIEB_INF else lieb_plus(m, n)


def _valid(m, n):
    return m >= 1 and n >= 1 and m + n >= 3


def _split_graph(family, I1, I2, J1, J2, m, n, lower_first=True):
    lo_c = _mk(family, len(I1) + 1, len(J1))
    up_c = _mk(family, len(I2), len(J2) + 1)
    lo, up = (0, 1) if lower_first else (1, 0)
    lo_outs = [(-1, a) for a in I1] + [(up, 0)]
    lo_ins = [(-1, b) for b in J1]
    up_outs = [(-1, a) for a in I2]
    up_ins = [(lo, len(I1))] + [(-1, b) for b in J2]
    if lower_first:
        return Graph([lo_c, up_c], [lo_outs, up_outs], [lo_ins, up_ins], m, n, check=False)
    return Graph([up_c, lo_c], [up_outs, lo_outs], [up_ins, lo_ins], m, n, check=False)


def delta_liebinfty(c, sign_profile=None, family=None):
    """Value of the differential on a generating corolla.

    Sums over splittings of outputs and inputs such that both resulting
    vertices are generators; the lower vertex takes the outputs I1, the
    inputs J1 and the new edge as its last output, the upper vertex the
    rest with the edge as its first input.
    """
    if isinstance(c, (Graph, PropElement)):
        return derivation_apply(lambda x: delta_liebinfty(x, sign_profile, family), c)
    fam = family or c.family
    if fam not in (LIEB_INF, LIEB_PLUS) or not is_valid_corolla(c):
        raise StructureError(f"not a LieB_inf generator: {c}")
    sp = sign_profile or profile(DELTA_LIEB_INF)
    m, n = c.m, c.n
    res = PropElement((m, n))
    if not _valid(m, n):
        return res
    corr = sp.get("correction", "I1+J1")
    lower_first = sp.get("vertex_order", "lower_upper") == "lower_upper"
    for s_out in enumerate_shuffles(m, 2, [0, 1]):
        I1, I2 = s_out.blocks
        for s_in in enumerate_shuffles(n, 2, [1, 0]):
            J1, J2 = s_in.blocks
            if not (_valid(len(I1) + 1, len(J1)) and _valid(len(I2), len(J2) + 1)):
                continue
            e = len(I1) * len(J2) + correction_exponent(corr, len(I1), len(I2), len(J1), len(J2))
            sign = shuffle_sign(s_out) * shuffle_sign(s_in) * (MINUS_ONE if e % 2 else ONE)
            res.add_graph(_split_graph(c.family, I1, I2, J1, J2, m, n, lower_first), sign)
    return res


CORRECTIONS = ("none", "I1+J1", "I2+J2", "I1*J1+I2*J2", "I1", "J1", "I2", "J2")


def correction_exponent(name, i1, i2, j1, j2):
    """Extra sign exponent on top of the printed shuffle signs and |I1||J2|."""
    table = {
        "none": 0,
        "I1+J1": i1 + j1,
        "I2+J2": i2 + j2,
        "I1*J1+I2*J2": i1 * j1 + i2 * j2,
        "I1": i1, "J1": j1, "I2": i2, "J2": j2,
    }
    return table[name]


def delta_squared(c, sign_profile=None):
    d = lambda x: delta_liebinfty(x, sign_profile)
    return derivation_apply(d, d(c))


def _graft(c, i, where, d_first):
    """Corolla ``c`` with the (1,1) generator grafted on slot ``i``.

    ``where`` is "out" or "in"; the graft keeps leg label i+1.
    """
    dd = lieb_plus(1, 1)
    m, n = c.m, c.n
    cv, dv = (1, 0) if d_first else (0, 1)
    c_outs = [(-1, a + 1) for a in range(m)]
    c_ins = [(-1, b + 1) for b in range(n)]
    if where == "out":
        c_outs[i] = (dv, 0)
        d_outs, d_ins = [(-1, i + 1)], [(cv, i)]
    else:
        c_ins[i] = (dv, 0)
        d_outs, d_ins = [(cv, i)], [(-1, i + 1)]
    if d_first:
        return Graph([dd, c], [d_outs, c_outs], [d_ins, c_ins], m, n, check=False)
    return Graph([c, dd], [c_outs, d_outs], [c_ins, d_ins], m, n, check=False)


def delta_plus(c, sign_profile=None, delta_profile=None):
    """Differential of the "+" extension.

    The (1,1) generator D goes to D stacked on D; other generators get
    their ordinary differential plus D grafted on every leg.
    """
    if isinstance(c, (Graph, PropElement)):
        return derivation_apply(lambda x: delta_plus(x, sign_profile, delta_profile), c)
    if c.family != LIEB_PLUS:
        raise StructureError(f"delta_plus is only defined on the LIEB_PLUS family, got {c.family}")
    sp = sign_profile or profile(DELTA_PLUS)
    m, n = c.m, c.n
    res = PropElement((m, n))
    if (m, n) == (1, 1):
        dd = lieb_plus(1, 1)
        g = Graph([dd, dd], [[(1, 0)], [(-1, 1)]], [[(-1, 1)], [(0, 0)]], 1, 1, check=False)
        res.add_graph(g, ONE)
        return res
    res = res + delta_liebinfty(c, delta_profile)
    out_d_first = sp.get("out_graft_order", "c_first") == "d_first"
    in_d_first = sp.get("in_graft_order", "d_first") == "d_first"
    out_sign = MINUS_ONE if (m + n - 3) % 2 == 0 else ONE
    for i in range(m):
        res.add_graph(_graft(c, i, "out", out_d_first), out_sign)
    for j in range(n):
        res.add_graph(_graft(c, j, "in", in_d_first), ONE)
    return res


def lieb_inf_generators(max_legs, min_legs=3):
    return [lieb_inf(m, s - m) for s in range(max(min_legs, 3), max_legs + 1) for m in range(1, s)]


def lieb_plus_generators(max_legs):
    gens = [lieb_plus(1, 1)] if max_legs >= 2 else []
    return gens + [lieb_plus(m, s - m) for s in range(3, max_legs + 1) for m in range(1, s)]
