"""Command line interface: ``hypercone gen|member|certify|verify|suite|locus``.

Exit codes: 0 success / true, 1 verification false, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from math import lcm

from . import __version__
from .branden import SymPencil, branden_pencil, compressed_pencil
from .exactla import (ONE, ZERO, Q, RatMatrix, det, psd_check, psd_witness,
                      qstr, rank)
from .exterior import sym_index

PENCIL_FORMAT = "hypercone-pencil/1"


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# pencil documents


def pencil_to_doc(P: SymPencil, provenance: dict, domain: str = "vector", matrix_n=None) -> dict:
    coeffs = []
    for A in P.coeffs:
        coeffs.append([[r, c, qstr(A[r, c])] for r in range(A.rows) for c in range(r, A.cols)
                       if A[r, c]])
    doc = {"format": PENCIL_FORMAT, "n": P.n, "size": P.size, "domain": domain,
           "var_labels": list(P.var_labels), "labels": list(P.labels),
           "coefficients": coeffs, "provenance": provenance}
    if matrix_n is not None:
        doc["matrix_n"] = matrix_n
    return doc


def pencil_from_doc(doc: dict) -> SymPencil:
    if doc.get("format") != PENCIL_FORMAT:
        raise UsageError("not a hypercone pencil document")
    m = int(doc["size"])
    mats = []
    for triples in doc["coefficients"]:
        a = [[ZERO] * m for _ in range(m)]
        for r, c, x in triples:
            a[r][c] = a[c][r] = Q(x)
        mats.append(RatMatrix(a, m, m))
    if len(mats) != int(doc["n"]):
        raise UsageError("coefficient count does not match n")
    return SymPencil(mats, doc.get("labels"), doc.get("var_labels"))


def write_sdpa(P: SymPencil, fh, comment: str = "") -> int:
    """SDPA sparse: F(x) = Σ x_i F_i with F_0 = 0, every F_i scaled by a
    common integer denominator L declared in a comment line."""
    L = 1
    for A in P.coeffs:
        for x in A.entries():
            if x:
                L = lcm(L, int(x.denominator))
    fh.write(f'"{comment or "hypercone pencil"}\n')
    fh.write(f"*hypercone-denominator {L}\n")
    fh.write(f"{P.n}\n1\n{P.size}\n")
    fh.write(" ".join("0" for _ in range(P.n)) + "\n")
    for i, A in enumerate(P.coeffs, start=1):
        for r in range(A.rows):
            for c in range(r, A.cols):
                x = A[r, c]
                if x:
                    fh.write(f"{i} 1 {r + 1} {c + 1} {int(x * L)}\n")
    return L


def read_sdpa(fh) -> SymPencil:
    L = 1
    body = []
    for line in fh:
        s = line.strip()
        if not s:
            continue
        if s.startswith("*hypercone-denominator"):
            L = int(s.split()[1])
            continue
        if s[0] in "\"*":
            continue
        body.append(s.replace(",", " ").replace("{", " ").replace("}", " ").replace("(", " ")
                    .replace(")", " "))
    m = int(body[0].split()[0])
    if int(body[1].split()[0]) != 1:
        raise UsageError("only single-block SDPA files are supported")
    size = abs(int(body[2].split()[0]))
    mats = [[[ZERO] * size for _ in range(size)] for _ in range(m + 1)]
    for s in body[4:]:
        k, b, r, c, x = s.split()
        x = Q(x) / L
        mats[int(k)][int(r) - 1][int(c) - 1] = x
        mats[int(k)][int(c) - 1][int(r) - 1] = x
    if any(any(row) for row in mats[0]):
        raise UsageError("nonzero constant matrix F_0 is not supported")
    return SymPencil([RatMatrix(a, size, size) for a in mats[1:]])


def _write_out(path, text_fn):
    if path in (None, "-"):
        text_fn(sys.stdout)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            text_fn(fh)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e}") from None


def _emit_pencil(P: SymPencil, args, provenance: dict, domain="vector", matrix_n=None):
    fmt = getattr(args, "format", "json")
    if fmt == "sdpa":
        _write_out(args.out, lambda fh: write_sdpa(P, fh, json.dumps(provenance)))
    else:
        doc = pencil_to_doc(P, provenance, domain, matrix_n)
        _write_out(args.out, lambda fh: (json.dump(doc, fh, indent=1), fh.write("\n")))


def mat_pencil_as_sym(Phi, labels=None) -> SymPencil:
    """A MatPencil as a SymPencil in the upper-triangle variables x_ij."""
    n = Phi.n
    vl = [f"x{i + 1}{j + 1}" for i, j in sym_index(n)]
    return SymPencil(list(Phi.images), labels or Phi.labels, vl)


# ---------------------------------------------------------------------------
# helpers


def parse_vector(text: str) -> list:
    try:
        return [Q(t) for t in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed rational in {text!r}: {e}") from None


def _read_point(path: str, P: SymPencil, doc: dict) -> list:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return parse_vector(text)
    if isinstance(obj, dict):
        obj = obj.get("point", obj.get("X"))
    if obj and isinstance(obj[0], list):
        n = len(obj)
        X = [[Q(x) for x in row] for row in obj]
        return [X[i][j] for i, j in sym_index(n)]
    try:
        return [Q(x) for x in obj]
    except (ValueError, TypeError) as e:
        raise UsageError(f"malformed point: {e}") from None


def _print_membership(M: RatMatrix) -> int:
    if psd_check(M):
        print("true")
        return 0
    v = psd_witness(M)
    val = sum((v[i] * M[i, j] * v[j] for i in range(M.rows) for j in range(M.cols)), ZERO)
    print("false")
    print("witness: " + " ".join(qstr(x) for x in v))
    print(f"v^T A(a) v = {qstr(val)}")
    return 1


def _check_range(cond: bool, msg: str):
    if not cond:
        raise UsageError(msg)


# ---------------------------------------------------------------------------
# commands


def cmd_gen_sigma(args) -> int:
    n, d = args.n, args.d
    _check_range(1 <= d <= n, "need 1 <= d <= n")
    P = branden_pencil(n, d) if args.raw else compressed_pencil(n, d)
    prov = {"generator": "gen sigma", "n": n, "d": d,
            "variant": "raw" if args.raw else "compressed", "version": __version__}
    _emit_pencil(P, args, prov)
    print(f"size {P.size}", file=sys.stderr)
    return 0


def growth_table(kmax: int = 2, nmax: int = 8) -> list:
    """(k, n, size) with size = dim Min_{n-k-1,n} = dim Min_{k+1,n}."""
    from .equivariant import min_dim
    return [(k, n, min_dim(n - k - 1, n)) for k in range(kmax + 1)
            for n in range(k + 2, nmax + 1)]


def cmd_gen_derivative(args) -> int:
    from .equivariant import derivative_cone_pencil, min_dim
    n, k = args.n, args.k
    _check_range(n >= 1 and 0 <= k <= n - 1, "need 0 <= k <= n-1")
    t = time.perf_counter()
    EP = derivative_cone_pencil(n, k, compress=args.compress)
    P = mat_pencil_as_sym(EP.pencil)
    prov = {"generator": "gen derivative-psd", "n": n, "k": k, "compress": bool(args.compress),
            "blocks": [{"eps": e, "start": a, "stop": b} for e, a, b in EP.block_ranges()],
            "version": __version__}
    _emit_pencil(P, args, prov, "symmetric", n)
    d = n - k
    info = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"size {P.size} (compressed bound dim Min_{{{d - 1},{n}}} = {min_dim(d - 1, n)}; "
          f"growth O(n^{2 * k + 2}) for fixed k)", file=info)
    print(f"time {time.perf_counter() - t:.2f}s", file=sys.stderr)
    if args.check:
        bad = derivative_oracle_check(EP, n, k, args.check, args.seed)
        print(f"oracle check: {args.check - bad}/{args.check} agree", file=info)
        return 1 if bad else 0
    return 0


def derivative_oracle_check(EP, n: int, k: int, samples: int, seed: int) -> int:
    """Disagreements between PSD of the pencil and the root oracle for
    σ_{n-k}(λ(X)) at seeded Cayley-rotated samples."""
    from .equivariant import cayley_samples
    from .hyperbolic import root_cone_member, sigma_instance
    h = sigma_instance(n, n - k)
    bad = 0
    for Qm, lam in cayley_samples(n, samples, seed):
        X = Qm @ RatMatrix.diag(lam) @ Qm.T
        if psd_check(EP(X)) != root_cone_member(h, lam):
            bad += 1
    return bad


def cmd_member(args) -> int:
    if args.which == "sigma":
        n, d = args.n, args.d
        _check_range(1 <= d <= n, "need 1 <= d <= n")
        a = parse_vector(args.a)
        _check_range(len(a) == n, f"expected {n} coordinates")
        return _print_membership(compressed_pencil(n, d)(a))
    if not args.pencil or not args.point:
        raise UsageError("member needs --pencil and --point (or the 'sigma' form)")
    with open(args.pencil, encoding="utf-8") as fh:
        doc = json.load(fh)
    P = pencil_from_doc(doc)
    a = _read_point(args.point, P, doc)
    _check_range(len(a) == P.n, f"point has {len(a)} coordinates, pencil has {P.n} variables")
    return _print_membership(P(a))


def cmd_certify(args) -> int:
    from . import certificates as C
    n, d = args.n, args.d
    _check_range(1 <= d <= n - 1, "need 1 <= d <= n-1")
    t = time.perf_counter()
    cert = C.newton_classical_certificate(n, d) if args.classical else \
        C.newton_matrix_certificate(n, d)
    if args.squares:
        cert.squares = C.sos_decompose(cert)
    _write_out(args.out, lambda fh: (json.dump(C.to_json(cert), fh, indent=1), fh.write("\n")))
    print(f"{cert.kind} n={n} d={d} gram {cert.gram.rows}x{cert.gram.rows}", file=sys.stderr)
    print(f"time {time.perf_counter() - t:.2f}s", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    from . import certificates as C
    try:
        cert = C.load(args.file)
    except OSError as e:
        raise UsageError(str(e)) from None
    except (KeyError, ValueError, json.JSONDecodeError) as e:
        print(f"FAIL parse: {e}")
        return 1
    res = C.verify(cert)
    for name, ok, detail in res.checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail and not ok else ""))
    if res.ok:
        print("certificate valid")
        return 0
    name, detail = res.first_failure
    print(f"certificate invalid: {name} failed")
    return 1


def cmd_suite(args) -> int:
    from .suite import run_suite
    threads = int(os.environ.get("HYPERCONE_THREADS", "1") or 1)
    ok = run_suite(args.level, args.seed, threads, sys.stdout, sys.stderr)
    return 0 if ok else 1


def quartic_locus(grid: int, radius=None, lams=(1, 1, 1, 1, 0, 0)):
    """Rows (u, v, rank, det, psd) on the slice a = e/4 + u(1,1,−1,−1) +
    v(1,−1,1,−1) of the hyperplane a_1+…+a_4 = 1; det is taken over the
    nonzero V_4 ⊕ V_{3,1} block."""
    from .equivariant import ma24_example
    r = ONE if radius is None else Q(radius)
    _, phi = ma24_example(lams)
    out = []
    for i in range(grid):
        u = -r + 2 * r * i / (grid - 1)
        for j in range(grid):
            v = -r + 2 * r * j / (grid - 1)
            a = [Q(1) / 4 + u + v, Q(1) / 4 + u - v, Q(1) / 4 - u + v, Q(1) / 4 - u - v]
            M = phi(a)
            out.append((u, v, rank(M), det(M.submatrix(range(4), range(4))), psd_check(M)))
    return out


def cmd_locus(args) -> int:
    _check_range(args.example == "quartic", "only the quartic example is available")
    _check_range(args.grid >= 2, "grid must be at least 2")
    rows = quartic_locus(args.grid, args.radius)

    def w(fh):
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["u", "v", "rank"] + (["det", "psd"] if args.with_det else []))
        for u, v, r, dt, p in rows:
            wr.writerow([qstr(u), qstr(v), r] + ([qstr(dt), int(p)] if args.with_det else []))
    _write_out(args.out, w)
    low = sum(1 for row in rows if row[2] < 4)
    print(f"{len(rows)} points, {low} with rank < 4", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercone",
                                description="Exact LMI representations of hyperbolicity cones.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a pencil")
    gs = g.add_subparsers(dest="what", required=True)
    s = gs.add_parser("sigma", help="pencil for the cone of sigma_{d,n}")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--raw", action="store_true", help="word-indexed pencil B(x)")
    grp.add_argument("--compressed", action="store_true", help="compressed pencil (default)")
    s.add_argument("--out", default="-")
    s.add_argument("--format", choices=["json", "sdpa"], default="json")
    s.set_defaults(func=cmd_gen_sigma)
    dp = gs.add_parser("derivative-psd", help="pencil for the k-th derivative cone of det")
    dp.add_argument("--n", type=int, required=True)
    dp.add_argument("--k", type=int, required=True)
    dp.add_argument("--compress", action="store_true")
    dp.add_argument("--out", default="-")
    dp.add_argument("--format", choices=["json", "sdpa"], default="json")
    dp.add_argument("--check", type=int, default=0, metavar="N",
                    help="compare with the root oracle at N seeded samples")
    dp.add_argument("--seed", type=int, default=0)
    dp.set_defaults(func=cmd_gen_derivative)

    m = sub.add_parser("member", help="cone membership")
    m.add_argument("which", nargs="?", choices=["sigma"], default=None)
    m.add_argument("--pencil")
    m.add_argument("--point")
    m.add_argument("--n", type=int)
    m.add_argument("--d", type=int)
    m.add_argument("--a")
    m.set_defaults(func=cmd_member)

    c = sub.add_parser("certify", help="emit an SOS certificate")
    cs = c.add_subparsers(dest="what", required=True)
    cn = cs.add_parser("newton")
    cn.add_argument("--n", type=int, required=True)
    cn.add_argument("--d", type=int, required=True)
    grp = cn.add_mutually_exclusive_group()
    grp.add_argument("--matrix", action="store_true", help="matrix Newton inequality (default)")
    grp.add_argument("--classical", action="store_true", help="classical Newton inequality")
    cn.add_argument("--squares", action="store_true", help="include the explicit squares")
    cn.add_argument("--out", default="-")
    cn.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="verify a certificate file")
    vs = v.add_subparsers(dest="what", required=True)
    vc = vs.add_parser("cert")
    vc.add_argument("file")
    vc.set_defaults(func=cmd_verify)

    su = sub.add_parser("suite", help="run the invariant suite")
    su.add_argument("--level", choices=["fast", "full"], default="fast")
    su.add_argument("--seed", type=int, default=0, help="master RNG seed")
    su.set_defaults(func=cmd_suite)

    lo = sub.add_parser("locus", help="rank-drop locus as CSV")
    lo.add_argument("--example", default="quartic")
    lo.add_argument("--grid", type=int, required=True)
    lo.add_argument("--radius", default="1", help="half-width of the (u, v) square")
    lo.add_argument("--with-det", action="store_true",
                    help="add the determinant of the nonzero 4x4 block and a PSD flag")
    lo.add_argument("--out", default="-")
    lo.set_defaults(func=cmd_locus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "member" and args.which is None and (args.n or args.a):
        args.which = "sigma"
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hypercone: error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OSError) as e:
        print(f"hypercone: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
