import random

import pytest

from hypercone.combinat import complement, kneser_adjacency, subsets
from hypercone.exactla import Q, RatMatrix, in_span, rank, same_span
from hypercone.multiaffine import (MaElement, chain_component_dim, chain_decompose_ma,
                                   deriv_e_power, deriv_matrix, iota, kneser_psi_matrix,
                                   permutation_action, restriction_to_fewer_vars, sigma,
                                   sigma_all, sigma_value)

from conftest import qmat


def test_sigma_24():
    s = sigma(2, range(4), 4)
    assert s.terms() == {S: 1 for S in subsets(4, 2)}
    assert sigma_value(2, [1, 2, 3]) == 11
    assert sigma_all([1, 2, 3]) == [1, 6, 11, 6]


def test_de_matrix_display():
    D = deriv_matrix([1, 1, 1, 1], 4, 2)
    assert D == qmat([[1, 1, 1, 0, 0, 0],
                      [1, 0, 0, 1, 1, 0],
                      [0, 1, 0, 1, 0, 1],
                      [0, 0, 1, 0, 1, 1]])
    assert D.cols - rank(D) == 2


def test_de_sigma(derived):
    # D_e σ_{2,3} = 2 σ_{1,3}
    D = deriv_matrix([1, 1, 1], 3, 2)
    s2 = sigma(2, range(3), 3).coeffs
    img = D @ RatMatrix.from_columns([s2], rows=3)
    assert img.col(0) == [Q(derived["De_sigma2_n3_over_sigma1"])] * 3


def test_de_power_is_iterated_derivative():
    e = [1] * 5
    D3 = deriv_matrix(e, 5, 3)
    D2 = deriv_matrix(e, 5, 2)
    assert deriv_e_power(5, 3, 2) == D2 @ D3


def _ma(n, d, *linear_factors):
    # expand a product of linear forms, dropping squares
    terms = {(): Q(1)}
    for f in linear_factors:
        new = {}
        for S, c in terms.items():
            for i, a in enumerate(f):
                if a and i not in S:
                    k = tuple(sorted(S + (i,)))
                    new[k] = new.get(k, 0) + c * a
        terms = new
    return MaElement.from_dict(n, d, terms).coeffs


def test_chain_ma24_matches_display():
    dec = chain_decompose_ma(4, 2)
    assert [c.label for c in dec.components] == [(4, 0), (3, 1), (2, 2)]
    v22 = RatMatrix.from_columns([_ma(4, 2, [1, 0, 0, -1], [0, 1, -1, 0]),
                                  _ma(4, 2, [1, 0, -1, 0], [0, 1, 0, -1])], rows=6)
    assert same_span(dec.component(2).basis, v22)
    v31 = RatMatrix.from_columns([_ma(4, 2, [1, -1, 0, 0], [0, 0, 1, 1]),
                                  _ma(4, 2, [1, 0, -1, 0], [0, 1, 0, 1]),
                                  _ma(4, 2, [1, 0, 0, -1], [0, 1, 1, 0])], rows=6)
    assert same_span(dec.component(1).basis, v31)
    assert same_span(dec.component(0).basis,
                     RatMatrix.from_columns([sigma(2, range(4), 4).coeffs], rows=6))


def test_chain_ma14():
    dec = chain_decompose_ma(4, 1)
    std = RatMatrix.from_columns([[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1]], rows=4)
    assert same_span(dec.component(1).basis, std)
    assert same_span(dec.component(0).basis, qmat([[1], [1], [1], [1]]))


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_dims_add_up(n):
    for d in range(n + 1):
        dec = chain_decompose_ma(n, d)
        assert sum(c.basis.cols for c in dec.components) == dec.dim
        for c in dec.components:
            assert c.basis.cols == chain_component_dim(n, c.i)


def test_chain_components_orthogonal():
    dec = chain_decompose_ma(5, 2)
    for a in dec.components:
        for b in dec.components:
            if a.i != b.i:
                assert (a.basis.T @ b.basis).is_zero()


def test_chain_invariant_under_permutations():
    rng = random.Random(0)
    for n, d in [(4, 2), (5, 2), (5, 3)]:
        dec = chain_decompose_ma(n, d)
        for _ in range(4):
            perm = list(range(n))
            rng.shuffle(perm)
            P = permutation_action(n, d, perm)
            for c in dec.components:
                assert all(in_span(c.basis, v) for v in (P @ c.basis).columns())


def test_iota():
    M = iota(2, 4)
    e = RatMatrix.from_columns([[1] * 4], rows=4)
    assert (M @ e).col(0) == [2 * x for x in sigma(2, range(4), 4).coeffs]
    with pytest.raises(ValueError):
        iota(4, 4)


def test_restriction_intersects_top_component():
    # Ma_{d,n-1} meets V_{n-d,d} when 2d < n
    for n, d in [(4, 1), (5, 2), (6, 2)]:
        R = restriction_to_fewer_vars(n, d)
        V = chain_decompose_ma(n, d).component(d).basis
        assert rank(RatMatrix.hstack([R, V], rows=R.rows)) < R.cols + V.cols


@pytest.mark.parametrize("n", range(1, 9))
def test_kneser_psi_is_relabelled_kneser(n):
    for d in range(0, n // 2 + 1):
        Psi = kneser_psi_matrix(n, d)
        K = kneser_adjacency(n, d)
        big, small = subsets(n, n - d), subsets(n, d)
        for r, R in enumerate(big):
            for c, S in enumerate(big):
                assert Psi[r, c] == K[small.rank(complement(R, n)), small.rank(complement(S, n))]
