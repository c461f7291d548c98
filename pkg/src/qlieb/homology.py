"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``index -> Fraction`` with no stored zeros.
"""
from fractions import Fraction

from .exact import ZERO, ONE
from .prop import PropElement, TruncationError


class _NoSolution:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NO_SOLUTION"

    def __bool__(self):
        return False


NO_SOLUTION = _NoSolution()


class SparseMatrix:
    """Column-major sparse matrix of Fractions."""

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self._cols = {}
        if entries:
            for (r, c), v in entries.items():
                self.set(r, c, v)

    def set(self, r, c, v):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError((r, c))
        v = Fraction(v)
        col = self._cols.setdefault(c, {})
        if v:
            col[r] = v
        else:
            col.pop(r, None)
            if not col:
                del self._cols[c]

    def add(self, r, c, v):
        self.set(r, c, self.get(r, c) + v)

    def get(self, r, c):
        return self._cols.get(c, {}).get(r, ZERO)

    def column(self, c):
        return dict(self._cols.get(c, {}))

    def set_column(self, c, vec):
        self._cols.pop(c, None)
        for r, v in vec.items():
            self.set(r, c, v)

    def entries(self):
        return {(r, c): v for c, col in self._cols.items() for r, v in col.items()}

    def nnz(self):
        return sum(len(col) for col in self._cols.values())

    def is_zero(self):
        return not self._cols

    def transpose(self):
        t = SparseMatrix(self.cols, self.rows)
        for c, col in self._cols.items():
            for r, v in col.items():
                t.set(c, r, v)
        return t

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        res = SparseMatrix(self.rows, other.cols)
        for c, col in other._cols.items():
            acc = {}
            for k, v in col.items():
                for r, w in self._cols.get(k, {}).items():
                    acc[r] = acc.get(r, ZERO) + w * v
            for r, v in acc.items():
                if v:
                    res.set(r, c, v)
        return res

    def apply(self, vec):
        acc = {}
        for k, v in vec.items():
            for r, w in self._cols.get(k, {}).items():
                acc[r] = acc.get(r, ZERO) + w * v
        return {r: v for r, v in acc.items() if v}

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries() == other.entries())

    def to_dense(self):
        return [[self.get(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _axpy(target, a, src):
    """target += a * src, in place."""
    for k, v in src.items():
        nv = target.get(k, ZERO) + a * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def row_reduce(rows, key=None, allowed=None):
    """Reduced row echelon form of a list of sparse rows.

    The pivot of each row is its entry with the smallest ``key`` among
    columns accepted by ``allowed``.  Returns (rows, pivots) with every
    pivot normalized to one and cleared from all other rows.  Rows that
    reduce to zero on the allowed columns but keep other entries are
    returned separately as a third value when ``allowed`` is given.
    """
    key = key or (lambda c: c)
    ech, pivots, where = [], [], {}
    leftovers = []
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        for col in [c for c in r if c in where]:
            if col in r:
                _axpy(r, -r[col], ech[where[col]])
        cand = [c for c in r if allowed is None or allowed(c)]
        if not cand:
            if r:
                leftovers.append(r)
            continue
        piv = min(cand, key=key)
        inv = ONE / r[piv]
        r = {k: v * inv for k, v in r.items()}
        for i, other in enumerate(ech):
            if piv in other:
                _axpy(other, -other[piv], r)
        where[piv] = len(ech)
        ech.append(r)
        pivots.append(piv)
    if allowed is not None:
        return ech, pivots, leftovers
    return ech, pivots


def rank(m):
    """Rank of a SparseMatrix; sparse columns are eliminated first."""
    cols = sorted((m.column(c) for c in range(m.cols)), key=len)
    cols = [c for c in cols if c]
    ech, piv = row_reduce(cols)
    return len(piv)


def solve_preimage(d, y):
    """Solve d x = y exactly; NO_SOLUTION if y is not in the image.

    Free variables are set to zero in the reduced echelon form, which
    makes the particular solution deterministic.
    """
    y = {k: Fraction(v) for k, v in y.items() if v}
    if not y:
        return {}
    rhs = d.cols
    eqs = {}
    for c in range(d.cols):
        for r, v in d._cols.get(c, {}).items():
            eqs.setdefault(r, {})[c] = v
    for r, v in y.items():
        if r >= d.rows:
            raise IndexError(r)
        eqs.setdefault(r, {})[rhs] = -v
    ech, pivots, left = row_reduce([eqs[r] for r in sorted(eqs)], allowed=lambda c: c != rhs)
    if any(left):
        return NO_SOLUTION
    x = {}
    for row, piv in zip(ech, pivots):
        v = -row.get(rhs, ZERO)
        if v:
            x[piv] = v
    return x


class ChainWindow:
    """Finite piece of a cochain complex with graph bases per degree.

    ``apply(g)`` returns the differential of basis graph ``g`` as a
    PropElement.  When ``project`` is given it maps a PropElement to
    coordinates in the next degree (used for quotient complexes).
    """

    def __init__(self, bases, apply, name="", project=None):
        self.bases = {k: list(v) for k, v in bases.items()}
        self.apply = apply
        self.name = name
        self.project = project
        self._index = {k: {g: i for i, g in enumerate(v)} for k, v in self.bases.items()}
        self._mats = {}

    def degrees(self):
        return sorted(self.bases)

    def dim(self, k):
        return len(self.bases.get(k, []))

    def coords(self, k, x):
        """Coordinates of PropElement ``x`` in the degree-k basis."""
        if self.project is not None:
            return self.project(k, x)
        index = self._index.get(k, {})
        vec = {}
        for g, c in x.terms.items():
            if g not in index:
                raise TruncationError(f"{self.name}: graph leaves the degree {k} window: {g.to_text()}", g)
            vec[index[g]] = c
        return vec

    def element(self, k, vec):
        basis = self.bases[k]
        el = None
        for i, c in sorted(vec.items()):
            g = basis[i]
            if el is None:
                el = PropElement(g.biarity)
            el._add_canonical(g, c)
        return el

    def matrix(self, k):
        if k not in self._mats:
            src = self.bases.get(k, [])
            m = SparseMatrix(self.dim(k + 1), len(src))
            for j, g in enumerate(src):
                img = self.apply(g)
                if img:
                    m.set_column(j, self.coords(k + 1, img))
            self._mats[k] = m
        return self._mats[k]


def matrix_of(window, k):
    return window.matrix(k)


def betti(window):
    res = {}
    ranks = {}
    for k in window.degrees():
        ranks[k] = rank(window.matrix(k)) if window.dim(k) else 0
    for k in window.degrees():
        res[k] = window.dim(k) - ranks[k] - ranks.get(k - 1, 0)
    return res


def euler_characteristic(window):
    return sum((-1) ** (k % 2) * window.dim(k) for k in window.degrees())
