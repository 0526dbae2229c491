"""Subsets, words and Kneser graphs.

Ground set is {0, ..., n-1} internally; labels printed for humans add one.
Subsets are sorted tuples, listed in lexicographic order, which is the one
order used for every matrix in the package.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial

from .exactla import RatMatrix


class SubsetTable:
    """All d-subsets of range(n) in lex order with a rank map."""

    def __init__(self, n: int, d: int):
        if not 0 <= d <= n:
            raise ValueError(f"need 0 <= d <= n, got n={n}, d={d}")
        self.n, self.d = n, d
        self.items = tuple(combinations(range(n), d))
        self._rank = {s: i for i, s in enumerate(self.items)}

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def rank(self, s) -> int:
        return self._rank[tuple(sorted(s))]

    def unrank(self, i: int) -> tuple:
        return self.items[i]

    def __contains__(self, s):
        return tuple(sorted(s)) in self._rank


@lru_cache(maxsize=None)
def subsets(n: int, d: int) -> SubsetTable:
    return SubsetTable(n, d)


class WordTable:
    """Words with distinct letters from range(n), length 0..maxlen,
    ordered by length and then lexicographically."""

    def __init__(self, n: int, maxlen: int):
        self.n, self.maxlen = n, maxlen
        items = []
        for l in range(maxlen + 1):
            items.extend(permutations(range(n), l))
        self.items = tuple(items)
        self._rank = {w: i for i, w in enumerate(self.items)}

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def rank(self, w) -> int:
        return self._rank[tuple(w)]

    def unrank(self, i: int) -> tuple:
        return self.items[i]


def word_count(n: int, maxlen: int) -> int:
    return sum(factorial(n) // factorial(n - l) for l in range(maxlen + 1))


@lru_cache(maxsize=None)
def words(n: int, d: int) -> WordTable:
    """Index set of the word pencil for σ_{d,n}: words of length < d."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    return WordTable(n, d - 1)


def kneser_adjacency(n: int, m: int) -> RatMatrix:
    T = subsets(n, m)
    sets = [frozenset(s) for s in T]
    return RatMatrix([[1 if not (a & b) else 0 for b in sets] for a in sets])


def complement(s, n: int) -> tuple:
    s = set(s)
    return tuple(i for i in range(n) if i not in s)


def label(s) -> str:
    """1-based human label of a subset or word, e.g. (0,2) -> '13', () -> '∅'."""
    return "".join(str(i + 1) for i in s) if s else "∅"


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
