"""Seeded invariant suite behind ``hypercone suite``.

Each check gets its own RNG derived from the master seed and the check id,
so verdicts and report lines do not depend on scheduling. Timings go to a
separate stream so the main report is byte-identical across runs.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor

from .exactla import Q, RatMatrix, ZERO, char_poly, ldlt_psd_decompose, psd_check, NotPSDError


def _rng(seed: int, cid: str) -> random.Random:
    return random.Random(f"{seed}:{cid}")


def _rand_sym(rng, n, lo=-5, hi=5):
    a = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = Q(rng.randint(lo, hi))
    return RatMatrix(a)


def chk_psd_ldlt(rng, nmax):
    for _ in range(60):
        M = _rand_sym(rng, rng.randint(1, nmax + 2))
        if rng.random() < 0.5:
            M = M.T @ M
        try:
            ldlt_psd_decompose(M)
            ok = True
        except NotPSDError:
            ok = False
        if ok != psd_check(M):
            return False, "psd_check disagrees with LDLT"
    return True, "60 matrices"


def chk_charpoly(rng, nmax):
    for _ in range(20):
        n = rng.randint(1, nmax + 2)
        M = _rand_sym(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        S = RatMatrix([[Q(rng.choice((-1, 1))) if perm[i] == j else ZERO for j in range(n)]
                       for i in range(n)])
        if char_poly(M.congruence(S)) != char_poly(M):
            return False, "char_poly not invariant"
    return True, "20 matrices"


def chk_kneser(rng, nmax):
    from .combinat import kneser_adjacency
    from .exactla import rank
    cnt = 0
    for n in range(1, nmax + 3):
        for m in range(0, n // 2 + 1):
            K = kneser_adjacency(n, m)
            if rank(K) != K.rows:
                return False, f"K({n},{m}) singular"
            cnt += 1
    return True, f"{cnt} graphs"


def chk_chain_invariant(rng, nmax):
    from .exactla import in_span
    from .multiaffine import chain_decompose_ma, permutation_action
    for n in range(2, nmax + 1):
        for d in range(n + 1):
            dec = chain_decompose_ma(n, d)
            for _ in range(3):
                perm = list(range(n))
                rng.shuffle(perm)
                Pm = permutation_action(n, d, perm)
                for c in dec.components:
                    if not all(in_span(c.basis, col) for col in (Pm @ c.basis).columns()):
                        return False, f"component {c.i} of Ma_{d},{n} not stable"
    return True, ""


def chk_branden_identity(rng, nmax):
    from math import factorial
    from .branden import branden_pencil, kernel_vector
    from .multiaffine import sigma_value
    for n in range(1, nmax + 1):
        for d in range(1, n + 1):
            B, m = branden_pencil(n, d), kernel_vector(n, d)
            for _ in range(3):
                a = [Q(rng.randint(-4, 6)) for _ in range(n)]
                mv = [f(a) for f in m]
                Bm = B(a) @ RatMatrix.from_columns([mv], rows=len(mv))
                exp = [factorial(d) * sigma_value(d, a) if k == 0 else ZERO for k in range(len(mv))]
                if Bm.col(0) != exp:
                    return False, f"B(x)m(x) identity fails for n={n}, d={d}"
    return True, ""


def chk_compression(rng, nmax):
    from .branden import compressed_by_q, compressed_pencil
    for n in range(1, nmax + 1):
        for d in range(1, n + 1):
            if compressed_by_q(n, d) != compressed_pencil(n, d):
                return False, f"closed form differs from QᵗBQ at n={n}, d={d}"
    return True, ""


def chk_sigma_oracle(rng, nmax):
    from .branden import sigma_cone_member
    from .hyperbolic import root_cone_member, sigma_instance
    cnt = 0
    for n in range(1, nmax + 1):
        for d in range(1, n + 1):
            h = sigma_instance(n, d)
            for _ in range(20):
                a = [Q(rng.randint(-3, 8)) / rng.randint(1, 3) for _ in range(n)]
                if sigma_cone_member(n, d, a) != root_cone_member(h, a):
                    return False, f"disagreement at n={n}, d={d}, a={a}"
                cnt += 1
    return True, f"{cnt} points"


def chk_matrix_sigma(rng, nmax):
    from .hyperbolic import matrix_sigma, matrix_sigma_minors
    for _ in range(30):
        n = rng.randint(1, nmax)
        X = _rand_sym(rng, n)
        for d in range(n + 1):
            if matrix_sigma(X, d) != matrix_sigma_minors(X, d):
                return False, "P_d two ways differ"
    return True, "30 matrices"


def chk_bezout(rng, nmax):
    from .exactla import UniPoly
    from .hyperbolic import bezout_matrix, interlaces
    for _ in range(40):
        d = rng.randint(2, nmax + 1)
        al = sorted(Q(rng.randint(-6, 6)) for _ in range(d))
        be = sorted(Q(rng.randint(-6, 6)) for _ in range(d - 1))
        f, g = UniPoly.from_roots(al), UniPoly.from_roots(be)
        if psd_check(bezout_matrix(f, g)) != interlaces(al, be):
            return False, f"Bezout/interlacing disagree for {al} {be}"
    return True, "40 pairs"


def chk_delta_commute(rng, nmax):
    from .exterior import delta_op
    for _ in range(5):
        n = rng.randint(2, nmax)
        d = rng.randint(2, n)
        A, B = _rand_sym(rng, n), _rand_sym(rng, n)
        if delta_op(A, d - 1) @ delta_op(B, d) != delta_op(B, d - 1) @ delta_op(A, d):
            return False, "Δ_A Δ_B != Δ_B Δ_A"
    return True, ""


def chk_psd_equivalence(rng, nmax):
    from .equivariant import cayley_samples, psd_equivalence_check, sigma_matrix_pencil, sigma_phi
    cases = [(3, 1), (3, 2), (4, 2)] if nmax <= 4 else [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2)]
    for n, d in cases:
        spec, phi = sigma_phi(n, d)
        EP = sigma_matrix_pencil(n, d)
        rep = psd_equivalence_check(phi, EP, cayley_samples(n, 20, rng.randint(0, 10 ** 9)))
        if not rep.ok:
            return False, f"disagreement for (n,d)=({n},{d})"
        lam = [Q(rng.randint(-3, 5)) for _ in range(n)]
        if EP.restricted_to_v(RatMatrix.diag(lam)) != phi(lam):
            return False, f"restriction property fails for ({n},{d})"
    return True, f"{len(cases)} cases"


def chk_identity(rng, nmax):
    from .certificates import calibrate_identity
    for n in range(1, min(nmax, 5) + 1):
        for d in range(n):
            calibrate_identity(n, d, seed=rng.randint(0, 10 ** 9), fresh=10)
    return True, ""


def chk_newton(rng, nmax):
    from .certificates import (from_json, newton_classical_certificate,
                               newton_matrix_certificate, to_json, verify)
    for n in range(2, min(nmax, 5) + 1):
        for d in range(1, n):
            for c in (newton_matrix_certificate(n, d), newton_classical_certificate(n, d)):
                r = verify(from_json(to_json(c)), points=5)
                if not r.ok:
                    return False, f"{c.kind} n={n} d={d}: {r.first_failure}"
    return True, ""


CHECKS = [
    ("exactla.psd-vs-ldlt", chk_psd_ldlt),
    ("exactla.charpoly-invariance", chk_charpoly),
    ("combinat.kneser-full-rank", chk_kneser),
    ("multiaffine.chain-invariance", chk_chain_invariant),
    ("exterior.delta-commute", chk_delta_commute),
    ("branden.kernel-identity", chk_branden_identity),
    ("branden.compression", chk_compression),
    ("hyperbolic.sigma-cross-oracle", chk_sigma_oracle),
    ("hyperbolic.matrix-sigma", chk_matrix_sigma),
    ("hyperbolic.bezout-interlacing", chk_bezout),
    ("equivariant.psd-equivalence", chk_psd_equivalence),
    ("certificates.identity", chk_identity),
    ("certificates.newton", chk_newton),
]


def _run_one(args):
    cid, level, seed = args
    fn = dict(CHECKS)[cid]
    nmax = 4 if level == "fast" else 6
    t = time.perf_counter()
    try:
        ok, detail = fn(_rng(seed, cid), nmax)
    except Exception as e:  # a crash is a failed check, reported by name
        ok, detail = False, f"{type(e).__name__}: {e}"
    return cid, ok, detail, time.perf_counter() - t


def run_suite(level: str, seed: int, threads: int, out, timing) -> bool:
    jobs = [(cid, level, seed) for cid, _ in CHECKS]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    allok = True
    for cid, ok, detail, dt in results:
        allok &= ok
        out.write(f"{'PASS' if ok else 'FAIL'} {cid}" + (f" [{detail}]" if detail else "") + "\n")
        timing.write(f"{cid}: {dt:.2f}s\n")
    out.write(f"suite {level} seed={seed}: {'all passed' if allok else 'FAILURES'}\n")
    return allok
