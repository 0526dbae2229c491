import random

import pytest

from hypercone.exactla import Q, UniPoly, psd_check
from hypercone.hyperbolic import (NotHyperbolicError, HyperbolicInstance, bezout_corners,
                                  bezout_matrix, derivative_instance, det_instance,
                                  interlaces, matrix_sigma, matrix_sigma_instance,
                                  matrix_sigma_minors, root_cone_member, sigma_instance,
                                  wronskian_eval)

from conftest import qmat


def test_matrix_sigma_oracle(derived):
    for case in derived["matrix_sigma"]:
        M = qmat(case["M"])
        for d, p in enumerate(case["P"]):
            assert matrix_sigma(M, d) == Q(p)
            assert matrix_sigma_minors(M, d) == Q(p)


def test_p2_antidiagonal():
    assert matrix_sigma(qmat([[0, 1], [1, 0]]), 2) == -1


def test_sigma_restriction(derived):
    h = sigma_instance(3, 2)
    assert list(h.restrict([1, 1, -1]).coeffs) == [Q(c) for c in derived["s23_restrict"]]


def test_bezout_oracle(derived):
    t = UniPoly([Q(0), Q(1)])
    cases = {
        "t2-1,t": (UniPoly.from_roots([Q(1), Q(-1)]), t),
        "t2-1,t-2": (UniPoly.from_roots([Q(1), Q(-1)]), UniPoly.from_roots([Q(2)])),
        "(t-1)2,t-1": (UniPoly.from_roots([Q(1), Q(1)]), UniPoly.from_roots([Q(1)])),
        "cubic": (UniPoly.from_roots([Q(-2), Q(1), Q(3)]),
                  UniPoly([Q(3) * c for c in UniPoly.from_roots([Q(0), Q(2)]).coeffs])),
    }
    for k, (f, g) in cases.items():
        assert bezout_matrix(f, g) == qmat(derived["bezout"][k]), k


def test_bezout_interlacing_examples():
    f = UniPoly.from_roots([Q(-2), Q(1), Q(3)])
    assert psd_check(bezout_matrix(f, UniPoly.from_roots([Q(0), Q(2)])))
    assert not psd_check(bezout_matrix(f, UniPoly.from_roots([Q(4), Q(5)])))
    assert interlaces([-2, 1, 3], [0, 2])
    assert interlaces([1, 1], [1])
    assert not interlaces([-2, 1, 3], [4, 5])


def test_wronskian_oracle(derived):
    h = sigma_instance(3, 2)
    assert wronskian_eval(h, [1, 1, 1], [1, 1, 1], [1, 0, 0]) == Q(derived["wronskian_s23_e_e_100"])


def test_bezout_corners_sigma():
    rng = random.Random(3)
    for n, d in [(3, 2), (4, 2), (4, 3), (5, 3)]:
        h = sigma_instance(n, d)
        for _ in range(5):
            a = [Q(rng.randint(1, 4)) for _ in range(n)]
            x = [Q(rng.randint(-4, 4)) for _ in range(n)]
            B, b11, b1d, bdd = bezout_corners(h, a, x)
            assert (B[0, 0], B[0, d - 1], B[d - 1, d - 1]) == (b11, b1d, bdd)
            assert psd_check(B)


def test_det_and_derivative_instances():
    h = det_instance(2)
    # upper-triangle coordinates (x11, x12, x22)
    assert h([Q(1), Q(0), Q(1)]) == 1
    assert root_cone_member(h, [Q(2), Q(1), Q(1)])
    assert not root_cone_member(h, [Q(1), Q(2), Q(1)])
    dh = derivative_instance(sigma_instance(3, 3), 1)
    x = [Q(2), Q(3), Q(5)]
    assert dh(x) == 6 + 10 + 15
    assert dh.degree == 2


def test_matrix_sigma_instance():
    h = matrix_sigma_instance(3, 2)
    assert h.degree == 2
    assert root_cone_member(h, [Q(1), Q(0), Q(0), Q(1), Q(0), Q(1)])


def test_not_hyperbolic():
    h = HyperbolicInstance(lambda x: x[0] ** 2 + x[1] ** 2, [1, 0], 2)
    with pytest.raises(NotHyperbolicError):
        root_cone_member(h, [Q(0), Q(1)])
