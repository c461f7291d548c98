from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qlieb.checks import d1_window, lieb_inf_window
from qlieb.homology import NO_SOLUTION, SparseMatrix, betti, euler_characteristic, rank, solve_preimage


def dense_rank(rows):
    """Oracle: plain Gaussian elimination on a list of lists."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def to_sparse(rows):
    m = SparseMatrix(len(rows), len(rows[0]))
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if v:
                m.set(i, j, v)
    return m


matrices = st.integers(1, 5).flatmap(lambda n: st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-2, 2), min_size=k, max_size=k), min_size=n, max_size=n)))


@settings(max_examples=80)
@given(matrices)
def test_rank_matches_dense_oracle(rows):
    assert rank(to_sparse(rows)) == dense_rank(rows)


@settings(max_examples=80)
@given(matrices, st.data())
def test_preimage_round_trip(rows, data):
    d = to_sparse(rows)
    x0 = {j: Fraction(data.draw(st.integers(-3, 3))) for j in range(d.cols)}
    y = d.apply({j: v for j, v in x0.items() if v})
    x = solve_preimage(d, y)
    assert x is not NO_SOLUTION
    assert d.apply(x) == {k: v for k, v in y.items() if v}


def test_preimage_zero_and_outside_image():
    d = to_sparse([[1, 0], [0, 0]])
    assert solve_preimage(d, {}) == {}
    assert solve_preimage(d, {1: 1}) is NO_SOLUTION


def test_transpose_and_product():
    a = to_sparse([[1, 2], [0, 3]])
    assert a.transpose().transpose() == a
    assert (a @ a).to_dense() == [[1, 8], [0, 9]]
    assert SparseMatrix(2, 2).is_zero()


def test_d1_window_at_21():
    w = d1_window(2, 1)
    assert w.dim(0) == 2 and w.dim(1) == 1
    assert rank(w.matrix(0)) == 1
    assert betti(w) == {0: 1, 1: 0}


def test_d1_window_at_22():
    w = d1_window(2, 2)
    b = {k: v for k, v in betti(w).items() if v}
    assert b == {-1: 1}
    dims = {k: w.dim(k) for k in w.degrees()}
    assert dims == {-1: 4, 0: 4, 1: 1}
    assert euler_characteristic(w) == -4 + 4 - 1


def test_delta_window_at_22():
    w = lieb_inf_window(2, 2, max_vertices=2)
    assert w.dim(-1) == 1 and w.dim(0) == 5
    assert rank(w.matrix(-1)) == 1


def test_delta_window_at_31():
    w = lieb_inf_window(3, 1, max_vertices=2)
    assert {k: v for k, v in betti(w).items() if v} == {0: 2}


def test_zero_differential():
    w = d1_window(1, 1)
    assert w.matrix(1).is_zero()
    assert betti(w) == {1: 1}
