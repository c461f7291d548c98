"""Exact scalars, shuffles, ordered set partitions and sign rules.

Everything here works over :class:`fractions.Fraction`; signs are returned
as ``Fraction(1)`` or ``Fraction(-1)`` so they can be multiplied straight
into coefficients.
"""
from fractions import Fraction
from itertools import combinations
from math import comb

ONE = Fraction(1)
MINUS_ONE = Fraction(-1)
ZERO = Fraction(0)


class StructureError(ValueError):
    """Malformed combinatorial or graph input."""


def scalar(x):
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    return Fraction(x)


def inversions(seq):
    """Number of pairs i<j with seq[i] > seq[j]."""
    n = 0
    for i in range(len(seq)):
        a = seq[i]
        for j in range(i + 1, len(seq)):
            if a > seq[j]:
                n += 1
    return n


def perm_sign(seq):
    return MINUS_ONE if inversions(seq) % 2 else ONE


def koszul_sign(perm, degrees):
    """Sign of permuting graded symbols.

    ``perm[i]`` is the new position (or any totally ordered key) of the
    symbol at position ``i``; every inverted pair contributes
    ``(-1)**(d_i*d_j)``.
    """
    if len(perm) != len(degrees):
        raise StructureError("perm and degrees differ in length")
    odd = 0
    for i in range(len(perm)):
        if degrees[i] % 2 == 0:
            continue
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degrees[j] % 2:
                odd ^= 1
    return MINUS_ONE if odd else ONE


def sort_with_sign(items, degrees, key=None):
    """Stable sort returning (sorted items, Koszul sign of the sort)."""
    idx = sorted(range(len(items)), key=(lambda i: key(items[i])) if key else (lambda i: items[i]))
    rank = [0] * len(items)
    for r, i in enumerate(idx):
        rank[i] = r
    return [items[i] for i in idx], koszul_sign(rank, degrees)


class Shuffle:
    """Ordered sequence of sorted blocks partitioning {1..n}."""

    __slots__ = ("ground_size", "blocks")

    def __init__(self, ground_size, blocks):
        blocks = tuple(tuple(b) for b in blocks)
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, ground_size + 1)):
            raise StructureError(f"blocks {blocks} do not partition 1..{ground_size}")
        for b in blocks:
            if list(b) != sorted(b):
                raise StructureError(f"block {b} is not sorted")
        self.ground_size = ground_size
        self.blocks = blocks

    def word(self):
        return [x for b in self.blocks for x in b]

    def sign(self):
        return shuffle_sign(self)

    def __eq__(self, other):
        return isinstance(other, Shuffle) and self.blocks == other.blocks and self.ground_size == other.ground_size

    def __hash__(self):
        return hash((self.ground_size, self.blocks))

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Shuffle({inner})"


def shuffle_sign(s):
    return perm_sign(s.word())


def enumerate_shuffles(n, part_count, min_sizes):
    """All ordered partitions of {1..n} into ``part_count`` blocks.

    Block ``i`` has at least ``min_sizes[i]`` elements.  The list is in
    lexicographic order of the block sequence.
    """
    if part_count != len(min_sizes):
        raise ValueError("min_sizes must have part_count entries")
    if sum(min_sizes) > n:
        raise ValueError("minimum sizes exceed ground set")
    out = []

    def rec(remaining, k, acc):
        if k == part_count - 1:
            if len(remaining) >= min_sizes[k]:
                out.append(Shuffle(n, acc + [tuple(remaining)]))
            return
        rest_min = sum(min_sizes[k + 1:])
        for size in range(min_sizes[k], len(remaining) - rest_min + 1):
            for block in combinations(remaining, size):
                left = [x for x in remaining if x not in block]
                rec(left, k + 1, acc + [block])

    rec(list(range(1, n + 1)), 0, [])
    out.sort(key=lambda s: s.blocks)
    return out


class Bunching:
    """Ordered set partition of {1..p} into nonempty unordered bunches."""

    __slots__ = ("ground_size", "bunches")

    def __init__(self, ground_size, bunches):
        bunches = tuple(tuple(sorted(b)) for b in bunches)
        if any(len(b) == 0 for b in bunches):
            raise StructureError("empty bunch")
        if sorted(x for b in bunches for x in b) != list(range(1, ground_size + 1)):
            raise StructureError(f"bunches {bunches} do not partition 1..{ground_size}")
        self.ground_size = ground_size
        self.bunches = bunches

    def sizes(self):
        return tuple(len(b) for b in self.bunches)

    def __len__(self):
        return len(self.bunches)

    def __eq__(self, other):
        return isinstance(other, Bunching) and self.bunches == other.bunches

    def __hash__(self):
        return hash(self.bunches)

    def __repr__(self):
        return "Bunching(" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.bunches) + ")"


def ordered_set_partitions(items):
    """Ordered partitions of the tuple ``items`` into nonempty blocks."""
    items = tuple(items)
    if not items:
        return [()]
    out = []
    n = len(items)
    for size in range(1, n + 1):
        for first in combinations(items, size):
            rest = tuple(x for x in items if x not in first)
            for tail in ordered_set_partitions(rest):
                out.append((first,) + tail)
    return out


def enumerate_bunchings(p):
    if p < 1:
        raise ValueError("p must be positive")
    res = [Bunching(p, bs) for bs in ordered_set_partitions(range(1, p + 1))]
    res.sort(key=lambda b: b.bunches)
    return res


def fubini(p):
    """Ordered Bell numbers via a(p) = sum_k C(p,k) a(p-k)."""
    a = [1]
    for m in range(1, p + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[p]
