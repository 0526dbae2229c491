"""The nine acceptance criteria, each at its stated tolerance (exact, zero
disagreements). Every criterion is one test; the terminal summary (or
``python3 tests/test_acceptance.py``) prints one PASS/FAIL line apiece.
"""

import random
import subprocess
import sys
import tempfile
import time
from math import comb, log
from pathlib import Path

from hypercone import polys
from hypercone.branden import (branden_pencil, compressed_by_q, compressed_pencil,
                               kernel_vector, sigma_cone_member)
from hypercone.certificates import (calibrate_identity, dump, newton_classical_certificate,
                                    newton_matrix_certificate, quadratic_form_poly,
                                    random_symmetric, target_poly, verify)
from hypercone.combinat import complement, kneser_adjacency, subsets
from hypercone.equivariant import (BasisMaps, assemble_phi, cayley_samples,
                                   derivative_cone_pencil, extract_profile, gamma_map,
                                   in_reference_basis, invariant_forms, min_dim, minor_rank,
                                   n3_example, n3_reference_w_basis, reference_std_basis,
                                   psd_equivalence_check, sigma_matrix_pencil, sigma_phi,
                                   v22_reference_basis)
from hypercone.exactla import Q, RatMatrix, UniPoly, det, psd_check, rank, same_span
from hypercone.exterior import sym_coords
from hypercone.hyperbolic import (bezout_corners, bezout_matrix, interlaces, matrix_sigma,
                                  root_cone_member, sigma_instance)
from hypercone.multiaffine import (MaElement, chain_decompose_ma, deriv_matrix,
                                   kneser_psi_matrix)

RESULTS: dict = {}
GROWTH: list = []
NAMES = {
    1: "reference matrices reproduced exactly",
    2: "det Φ(A) factorization (n=3 example)",
    3: "PSD-equivalence Φ(X) vs φ(λ(X))",
    4: "cross-oracle σ_{d,n} membership",
    5: "calibrated identity Φ·M = w·P_{d+1}",
    6: "Newton certificates",
    7: "Kneser full rank",
    8: "size claims",
    9: "Bézout/interlacing and corners",
}


def M(rows):
    return RatMatrix([[Q(x) for x in r] for r in rows])


def record(k, ok, detail, t0):
    RESULTS[k] = (ok, f"{detail} ({time.perf_counter() - t0:.1f}s)")
    assert ok, detail


def summary_lines():
    out = []
    for k in sorted(NAMES):
        if k in RESULTS:
            ok, detail = RESULTS[k]
            out.append(f"criterion {k} {'PASS' if ok else 'FAIL'}: {NAMES[k]} - {detail}")
            if k == 8:
                out.extend("    " + line for line in GROWTH)
        else:
            out.append(f"criterion {k} FAIL: {NAMES[k]} - not run")
    return out


def units(n):
    return [[Q(1) if t == i else Q(0) for t in range(n)] for i in range(n)]


def pencil_from_entries(fn, n, m):
    return [M([[fn(x, r, c) for c in range(m)] for r in range(m)]) for x in units(n)]


def _ma(n, d, *factors):
    terms = {(): Q(1)}
    for f in factors:
        new = {}
        for S, c in terms.items():
            for i, a in enumerate(f):
                if a and i not in S:
                    k = tuple(sorted(S + (i,)))
                    new[k] = new.get(k, 0) + c * a
        terms = new
    return list(MaElement.from_dict(n, d, terms).coeffs)


def n3_Phi_expected(A):
    a = lambda i, j: A[i - 1, j - 1]
    tr = A.trace()
    return M([
        [tr, a(1, 1) - a(2, 2), a(1, 1) - a(3, 3), 2 * a(1, 2), 2 * a(1, 3), 2 * a(2, 3)],
        [a(1, 1) - a(2, 2), 3 * tr - a(3, 3), a(1, 1) + tr, 0, a(1, 3), -a(2, 3)],
        [a(1, 1) - a(3, 3), a(1, 1) + tr, 3 * tr - a(2, 2), a(1, 2), 0, -a(2, 3)],
        [2 * a(1, 2), 0, a(1, 2), 3 * tr - a(3, 3), a(2, 3), a(1, 3)],
        [2 * a(1, 3), a(1, 3), 0, a(2, 3), 3 * tr - a(2, 2), a(1, 2)],
        [2 * a(2, 3), -a(2, 3), -a(2, 3), a(1, 3), a(1, 2), 3 * tr - a(1, 1)]])


def n3_Phi():
    spec, phi = n3_example((1, 1, 1, 1))
    EP = assemble_phi(extract_profile(phi, spec), spec)
    return in_reference_basis(EP, n3_reference_w_basis())


def test_criterion_1_reference_matrices():
    t0 = time.perf_counter()
    checks = {}
    checks["D_e on Ma_2,4"] = deriv_matrix([1] * 4, 4, 2) == M(
        [[1, 1, 1, 0, 0, 0], [1, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 1]])
    dec = chain_decompose_ma(4, 2)
    checks["V_2,2 basis"] = same_span(dec.component(2).basis, RatMatrix.from_columns(
        [_ma(4, 2, [1, 0, 0, -1], [0, 1, -1, 0]), _ma(4, 2, [1, 0, -1, 0], [0, 1, 0, -1])], rows=6))
    checks["V_3,1 basis in Ma_2,4"] = same_span(dec.component(1).basis, RatMatrix.from_columns(
        [_ma(4, 2, [1, -1, 0, 0], [0, 0, 1, 1]), _ma(4, 2, [1, 0, -1, 0], [0, 1, 0, 1]),
         _ma(4, 2, [1, 0, 0, -1], [0, 1, 1, 0])], rows=6))
    checks["V_3,1 basis in Ma_1,4"] = same_span(chain_decompose_ma(4, 1).component(1).basis,
                                                 reference_std_basis(4))
    checks["alpha Gram"] = invariant_forms(4, 2, v22_reference_basis()) == [M([[2, 1], [1, 2]])]
    bm = BasisMaps(4, 1, reference_std_basis(4))
    checks["G(a) n=4"] = [bm.G(x) for x in units(4)] == pencil_from_entries(
        lambda x, r, c: x[0] + (x[r + 1] if r == c else 0), 4, 3)
    g = gamma_map(4, 0, RatMatrix([[1]]), reference_std_basis(4))
    checks["gamma_0,4 row"] = [g(x) for x in units(4)] == [
        M([[x[0] - x[1], x[0] - x[2], x[0] - x[3]]]) for x in units(4)]

    def b_entry(x, r, c):
        if r == c:
            return x[0] + x[1] + x[2]
        if r == 0:
            return -x[c - 1]
        return -x[r - 1] if c == 0 else 0
    checks["B(x) d=2"] = list(branden_pencil(3, 2).coeffs) == pencil_from_entries(b_entry, 3, 4)
    xs = [Q(2), Q(3), Q(7)]
    checks["m(x) d=2 n=3"] = [f(xs) for f in kernel_vector(3, 2)] == [12, 2, 3, 7]
    h = Q(1) / 2
    checks["B~ (2,3)"] = list(compressed_pencil(3, 2).coeffs) == pencil_from_entries(
        lambda x, r, c: sum(x) - x[r] if r == c else h * x[3 - r - c], 3, 3)
    checks["B~ (2,4)"] = list(compressed_pencil(4, 2).coeffs) == pencil_from_entries(
        lambda x, r, c: sum(x) - x[r] if r == c else h * (sum(x) - x[r] - x[c]), 4, 4)
    _, phi = n3_example((1, 1, 1, 1))
    checks["phi(a) n=3"] = list(phi.coeffs) == pencil_from_entries(
        lambda x, r, c: M([[x[0] + x[1] + x[2], x[0] - x[1], x[0] - x[2]],
                           [x[0] - x[1], 3 * x[0] + 3 * x[1] + 2 * x[2], 2 * x[0] + x[1] + x[2]],
                           [x[0] - x[2], 2 * x[0] + x[1] + x[2], 3 * x[0] + 2 * x[1] + 3 * x[2]]]
                          )[r, c], 3, 3)
    P = n3_Phi()
    basis6 = []
    for i in range(3):
        for j in range(i, 3):
            E = [[0] * 3 for _ in range(3)]
            E[i][j] = E[j][i] = 1
            basis6.append(M(E))
    checks["Phi(A) 6x6"] = all(P(E) == n3_Phi_expected(E) for E in basis6)
    bad = [k for k, v in checks.items() if not v]
    dt = time.perf_counter() - t0
    record(1, not bad and dt < 5, f"{len(checks) - len(bad)}/{len(checks)} displays"
           + (f", mismatched: {bad}" if bad else "") + ("" if dt < 5 else ", over 5 s"), t0)


def test_criterion_2_det_factorization():
    t0 = time.perf_counter()
    P = n3_Phi()
    rng = random.Random("criterion-2")
    bad = 0
    for _ in range(60):
        a = [[Q(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                a[i][j] = a[j][i] = Q(rng.randint(-9, 9)) / rng.randint(1, 4)
        A = RatMatrix(a)
        p1, p2, p3 = (matrix_sigma(A, k) for k in (1, 2, 3))
        if det(P(A)) != 3 * (p1 ** 3 + 2 * p1 * p2 + 3 * p3) * (18 * p1 ** 3 + 3 * p1 * p2 - p3):
            bad += 1
    record(2, bad == 0, f"60 rational points, {bad} mismatches", t0)


CASES3 = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2)]


def test_criterion_3_psd_equivalence():
    t0 = time.perf_counter()
    parts, bad = [], 0
    for n, d in CASES3:
        _, phi = sigma_phi(n, d)
        EP = sigma_matrix_pencil(n, d)
        rep = psd_equivalence_check(phi, EP, cayley_samples(n, 200, seed=1000 * n + d))
        bad += len(rep.disagreements) + (rep.samples != 200)
        parts.append(f"({n},{d}) {rep.agreements}/200 psd={rep.psd_count}")
    record(3, bad == 0, "; ".join(parts), t0)


def test_criterion_4_cross_oracle():
    t0 = time.perf_counter()
    rng = random.Random("criterion-4")
    bad = total = inside = 0
    for n in range(1, 7):
        for d in range(1, n + 1):
            h = sigma_instance(n, d)
            for _ in range(1000):
                a = [Q(rng.randint(-4, 9)) / rng.randint(1, 3) for _ in range(n)]
                x = sigma_cone_member(n, d, a)
                bad += x != root_cone_member(h, a)
                inside += x
                total += 1
    record(4, bad == 0, f"{total} points over 21 (n,d), {inside} inside, {bad} disagreements", t0)


def test_criterion_5_identity():
    t0 = time.perf_counter()
    bad = pairs = 0
    for n in range(1, 6):
        for d in range(0, n):
            cal = calibrate_identity(n, d)
            rng = random.Random(f"criterion-5:{n}:{d}")
            for _ in range(50):
                X = random_symmetric(n, rng)
                bad += any(r != 0 for r in cal.residual(X))
            pairs += 1
    record(5, bad == 0, f"{pairs} (n,d) pairs x 50 fresh points, {bad} nonzero residuals", t0)


def _verify_file(path):
    r = subprocess.run([sys.executable, "-m", "hypercone.cli", "verify", "cert", str(path)],
                       capture_output=True, text=True)
    return r.returncode == 0 and "certificate valid" in r.stdout


def test_criterion_6_newton():
    t0 = time.perf_counter()
    problems = []
    count = 0
    with tempfile.TemporaryDirectory() as tmp:
        for n in range(2, 6):
            for d in range(1, n):
                cm, cc = newton_matrix_certificate(n, d), newton_classical_certificate(n, d)
                for cert in (cm, cc):
                    count += 1
                    if not psd_check(cert.gram):
                        problems.append(f"{cert.kind} {n},{d} gram not psd")
                    res = dict((k, ok) for k, ok, _ in verify(cert, points=30).checks)
                    if not (res.get("residual-symbolic") and res.get("residual-points")):
                        problems.append(f"{cert.kind} {n},{d} residual")
                    p = Path(tmp) / f"{cert.kind}-{n}-{d}.json"
                    dump(cert, p)
                    if not _verify_file(p):
                        problems.append(f"{cert.kind} {n},{d} verify from file")
                # diagonal restriction of the matrix certificate is the classical Newton form
                form = quadratic_form_poly(cm.gram, cm.basis_polys())
                target = target_poly("newton-classical", n, d)
                rng = random.Random(f"criterion-6:{n}:{d}")
                for _ in range(10):
                    x = [Q(rng.randint(-6, 6)) for _ in range(n)]
                    if polys.evaluate(form, sym_coords(RatMatrix.diag(x))) != polys.evaluate(target, x):
                        problems.append(f"diagonal restriction {n},{d}")
                        break
    record(6, not problems, f"{count} certificates verified from file" +
           (f"; problems: {problems}" if problems else ""), t0)


def test_criterion_7_kneser():
    t0 = time.perf_counter()
    bad, count = [], 0
    for n in range(1, 9):
        for d in range(0, n // 2 + 1):
            count += 1
            Psi = kneser_psi_matrix(n, d)
            K = kneser_adjacency(n, d)
            big, small = subsets(n, n - d), subsets(n, d)
            same = all(Psi[r, c] == K[small.rank(complement(R, n)), small.rank(complement(S, n))]
                       for r, R in enumerate(big) for c, S in enumerate(big))
            if not same or rank(Psi) != Psi.rows or rank(K) != K.rows:
                bad.append((n, d))
    record(7, not bad, f"{count} pairs 2d<=n<=8: Psi on (n-d)-subsets equals K(n,d) "
           f"relabelled by complements, all nonsingular" + (f"; failing {bad}" if bad else ""), t0)


def growth_rows(kmax=2, nmax=5):
    rows = []
    for k in range(kmax + 1):
        for n in range(k + 2, nmax + 1):
            rows.append((k, n, derivative_cone_pencil(n, k).size, min_dim(k + 1, n)))
    return rows


def test_criterion_8_sizes():
    t0 = time.perf_counter()
    problems = []
    for n in range(1, 9):
        for d in range(1, n + 1):
            if compressed_pencil(n, d).size != comb(n, d - 1):
                problems.append(f"B~ size {n},{d}")
    for n in range(1, 6):
        for d in range(1, n + 1):
            if compressed_by_q(n, d) != compressed_pencil(n, d):
                problems.append(f"B~ closed form {n},{d}")
    for n in range(1, 7):
        for d in range(0, n + 1):
            if min_dim(d, n) != minor_rank(n, d):
                problems.append(f"dim Min {d},{n}")
    rows = growth_rows()
    lines = ["k  n  pencil  dim Min_{k+1,n}"]
    for k, n, size, md in rows:
        lines.append(f"{k}  {n}  {size:6d}  {md:6d}")
        if size != md:
            problems.append(f"derivative pencil size {k},{n}")
    for k in range(3):
        seq = [min_dim(k + 1, n) for n in range(k + 2, 41)]
        if any(b <= a for a, b in zip(seq, seq[1:])):
            problems.append(f"growth not monotone k={k}")
        slope = log(seq[-1] / seq[-2]) / log(40 / 39)
        lines.append(f"k={k}: log-log slope at n=40 is {slope:.2f} (exponent {2 * k + 2})")
        if not 2 * k + 2 - 0.5 < slope < 2 * k + 2 + 0.5:
            problems.append(f"growth slope k={k}")
    GROWTH[:] = lines
    record(8, not problems, "sizes C(n,d-1), dim Min formula = minor rank for n<=6, "
           "growth table monotone" + (f"; problems: {problems}" if problems else ""), t0)


def test_criterion_9_bezout():
    t0 = time.perf_counter()
    rng = random.Random("criterion-9")
    bad = inter = 0
    for i in range(200):
        deg = rng.randint(2, 6)
        al = sorted(Q(rng.randint(-8, 8)) for _ in range(deg))
        if i % 2 == 0:
            be = [al[j] + (al[j + 1] - al[j]) * Q(rng.randint(0, 4)) / 4 for j in range(deg - 1)]
        else:
            be = sorted(Q(rng.randint(-8, 8)) for _ in range(deg - 1))
        lead = Q(rng.randint(1, 3))
        f = UniPoly([lead * c for c in UniPoly.from_roots(al).coeffs])
        g = UniPoly.from_roots(be)
        il = interlaces(al, be)
        inter += il
        bad += psd_check(bezout_matrix(f, g)) != il
    cbad = ccount = 0
    for n in range(2, 6):
        for d in range(2, n + 1):
            h = sigma_instance(n, d)
            for _ in range(5):
                a = [Q(rng.randint(1, 5)) for _ in range(n)]
                x = [Q(rng.randint(-5, 5)) for _ in range(n)]
                B, b11, b1d, bdd = bezout_corners(h, a, x)
                ok = (B[0, 0], B[0, d - 1], B[d - 1, 0], B[d - 1, d - 1]) == (b11, b1d, b1d, bdd)
                cbad += not ok or not psd_check(B)
                ccount += 1
    record(9, bad == 0 and cbad == 0, f"200 pairs ({inter} interlacing), {bad} disagreements; "
           f"{ccount} corner checks, {cbad} failures", t0)


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
    return 0 if all(RESULTS.get(k, (False,))[0] for k in NAMES) else 1


if __name__ == "__main__":
    sys.exit(main())
