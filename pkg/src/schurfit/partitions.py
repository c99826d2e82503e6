"""Exponent signatures, the partitions derived from them, and subset streams.

The model signature d = (d1 > d2 > ... > dn >= 0) determines the partition
lam = d - staircase(n) and, for each dropped exponent, the smaller partition
lam[i] = drop(d, i) - staircase(n-1).  Column indexing of the wide solution
matrix and all float-mode summations use the lexicographic subset order
produced by ``enumerate_subsets``.
"""

from __future__ import annotations

from itertools import combinations


class Exponents:
    """Strictly decreasing tuple of non-negative integer exponents."""

    __slots__ = ("d",)

    def __init__(self, degrees):
        d = tuple(int(v) for v in degrees)
        if not d:
            raise ValueError("need at least one exponent")
        if d[-1] < 0:
            raise ValueError("exponents must be non-negative")
        if any(a <= b for a, b in zip(d, d[1:])):
            raise ValueError(f"exponents must be strictly decreasing: {d}")
        self.d = d

    def __len__(self):
        return len(self.d)

    def __iter__(self):
        return iter(self.d)

    def __getitem__(self, i):
        return self.d[i]

    def __eq__(self, other):
        return isinstance(other, Exponents) and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"Exponents{self.d}"

    @property
    def total(self):
        return sum(self.d)

    def drop(self, i):
        """The (n-1)-tuple with the i-th exponent removed (i is 1-based)."""
        if not 1 <= i <= len(self.d):
            raise IndexError(f"index {i} out of range for {self!r}")
        return self.d[: i - 1] + self.d[i:]


class Partition:
    """Weakly decreasing tuple of non-negative integers.

    Trailing zeros are kept as given but ignored by equality and hashing,
    since partitions of different nominal lengths must interoperate.
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        p = tuple(int(v) for v in parts)
        if p and p[-1] < 0:
            raise ValueError("parts must be non-negative")
        if any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"parts must be weakly decreasing: {p}")
        self.parts = p

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __repr__(self):
        return f"Partition{self.parts}"

    @property
    def weight(self):
        return sum(self.parts)

    def normalized(self):
        """Parts with trailing zeros stripped."""
        p = self.parts
        k = len(p)
        while k and p[k - 1] == 0:
            k -= 1
        return p[:k]


def staircase(n):
    """The partition (n-1, n-2, ..., 1, 0)."""
    return Partition(range(n - 1, -1, -1))


def lambda_from_degrees(d):
    """Partition d - staircase(n); its weight is sum(d) - C(n, 2)."""
    n = len(d)
    return Partition(dk - (n - 1 - k) for k, dk in enumerate(d))


def lambda_drop(d, i):
    """Partition obtained by removing the i-th exponent (1-based), then
    subtracting staircase(n-1)."""
    rest = d.drop(i)
    n1 = len(rest)
    return Partition(dk - (n1 - 1 - k) for k, dk in enumerate(rest))


def conjugate(lam):
    """Transpose of the Young diagram: part j counts cells of height >= j."""
    parts = lam.normalized()
    if not parts:
        return Partition(())
    return Partition(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def enumerate_subsets(m, r):
    """All r-element subsets of {1, ..., m} as 1-based tuples, lexicographic.

    This order is the column-index contract for the wide solution matrix and
    the deterministic float-mode summation order.
    """
    if r < 0 or r > m:
        raise ValueError(f"cannot choose {r} elements from [{m}]")
    return combinations(range(1, m + 1), r)
