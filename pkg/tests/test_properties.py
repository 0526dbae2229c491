"""Invariants over generated inputs."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hypercone.branden import compressed_pencil, sigma_cone_member
from hypercone.exactla import (NotPSDError, Q, RatMatrix, UniPoly, char_poly,
                               char_poly_by_interpolation, count_real_roots,
                               ldlt_psd_decompose, psd_check, psd_witness, qstr)
from hypercone.exterior import additive_compound, delta_op, wedge_power
from hypercone.hyperbolic import (bezout_matrix, interlaces, matrix_sigma,
                                  matrix_sigma_minors, root_cone_member, sigma_instance)
from hypercone.multiaffine import permutation_action, sigma_value

settings.register_profile("hc", deadline=None, max_examples=60)
settings.load_profile("hc")

small = st.integers(-6, 6)
rat = st.fractions(min_value=-8, max_value=8, max_denominator=5).map(lambda f: Q(f"{f.numerator}/{f.denominator}"))


@st.composite
def sym_mats(draw, nmin=1, nmax=4, elem=small):
    n = draw(st.integers(nmin, nmax))
    a = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = Q(draw(elem))
    return RatMatrix(a)


@st.composite
def square_mats(draw, n):
    return RatMatrix([[Q(draw(small)) for _ in range(n)] for _ in range(n)])


@given(sym_mats())
def test_psd_agrees_with_ldlt(M):
    try:
        ldlt_psd_decompose(M)
        ok = True
    except NotPSDError:
        ok = False
    assert ok == psd_check(M)


@given(sym_mats())
def test_gram_is_psd(M):
    assert psd_check(M.T @ M)


@given(sym_mats())
def test_witness_certifies(M):
    v = psd_witness(M)
    if psd_check(M):
        assert v is None
    else:
        Mv = M @ RatMatrix.from_columns([v], rows=M.rows)
        assert sum((x * y for x, y in zip(v, Mv.col(0))), Q(0)) < 0


@given(sym_mats())
def test_charpoly_routes_agree(M):
    assert char_poly(M) == char_poly_by_interpolation(M)


@given(sym_mats())
def test_matrix_sigma_routes_agree(M):
    for d in range(M.rows + 1):
        assert matrix_sigma(M, d) == matrix_sigma_minors(M, d)


@given(st.lists(small, min_size=1, max_size=5))
def test_matrix_sigma_on_diagonal(xs):
    X = RatMatrix.diag([Q(x) for x in xs])
    for d in range(len(xs) + 1):
        assert matrix_sigma(X, d) == sigma_value(d, xs)


@given(st.lists(small, min_size=1, max_size=6))
def test_sturm_counts_distinct_roots(roots):
    p = UniPoly.from_roots([Q(r) for r in roots])
    assert count_real_roots(p) == len(set(roots))


@given(st.lists(small, min_size=2, max_size=5), st.data())
def test_bezout_interlacing(al, data):
    be = data.draw(st.lists(small, min_size=len(al) - 1, max_size=len(al) - 1))
    f = UniPoly.from_roots([Q(x) for x in al])
    g = UniPoly.from_roots([Q(x) for x in be])
    assert psd_check(bezout_matrix(f, g)) == interlaces(al, be)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n), st.lists(rat, min_size=n, max_size=n))))
def test_sigma_membership_cross_oracle(args):
    n, d, a = args
    assert sigma_cone_member(n, d, a) == root_cone_member(sigma_instance(n, d), a)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n), st.permutations(range(n)),
    st.lists(small, min_size=n, max_size=n))))
def test_compressed_pencil_equivariant(args):
    n, d, perm, a = args
    P = compressed_pencil(n, d)
    Pm = permutation_action(n, d - 1, perm)
    moved = [Q(0)] * n
    for i, p in enumerate(perm):
        moved[p] = Q(a[i])
    assert P(moved) == Pm @ P([Q(x) for x in a]) @ Pm.T


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(square_mats(n), square_mats(n))),
       st.integers(0, 4))
def test_wedge_power_multiplicative(XY, d):
    X, Y = XY
    d = min(d, X.rows)
    assert wedge_power(X @ Y, d) == wedge_power(X, d) @ wedge_power(Y, d)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(square_mats(n), square_mats(n))),
       st.integers(1, 4))
def test_additive_compound_is_lie_map(XY, d):
    X, Y = XY
    d = min(d, X.rows)
    L = lambda Z: additive_compound(Z, d)
    assert L(X @ Y - Y @ X) == L(X) @ L(Y) - L(Y) @ L(X)


@settings(max_examples=25)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.integers(2, n), sym_mats(n, n, st.integers(-2, 2)), sym_mats(n, n, st.integers(-2, 2)))))
def test_delta_commute(args):
    d, A, B = args
    assert delta_op(A, d - 1) @ delta_op(B, d) == delta_op(B, d - 1) @ delta_op(A, d)


@given(st.fractions(max_denominator=1000))
def test_qstr_roundtrip(f):
    x = Q(f"{f.numerator}/{f.denominator}")
    assert Q(qstr(x)) == x
    assert Fraction(qstr(x)) == f
