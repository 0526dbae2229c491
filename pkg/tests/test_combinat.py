from math import comb

from hypercone.combinat import (binom, complement, kneser_adjacency, label, subsets,
                                word_count, words)
from hypercone.exactla import rank


def test_subsets_rank_unrank():
    t = subsets(5, 2)
    assert len(t) == 10
    for r in range(len(t)):
        assert t.rank(t.unrank(r)) == r
    assert t.unrank(0) == (0, 1)


def test_words():
    w = words(3, 2)
    assert list(w) == [(), (0,), (1,), (2,)]
    # words of length <= maxlen with distinct letters
    assert word_count(3, 1) == len(w) == 4
    assert word_count(4, 2) == len(words(4, 3)) == 1 + 4 + 12


def test_kneser_against_oracle(derived):
    for key, v in derived["kneser"].items():
        n, m = map(int, key.split(","))
        K = kneser_adjacency(n, m)
        assert K.rows == v["size"] == comb(n, m)
        assert sum(K.row(0)) == v["rowsum"]
        if n <= 7:
            assert rank(K) == v["rank"]


def test_misc():
    assert complement((0, 2), 4) == (1, 3)
    assert binom(6, 3) == 20 and binom(3, 5) == 0
    assert isinstance(label((0, 1)), str)
