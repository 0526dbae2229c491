"""Minor vectors M(X), the identity Φ(X)·M(X) = w·P_{d+1}(X), Wronskian
Gram matrices and sum-of-squares certificates for Newton's inequalities.

Φ is the compressed equivariant pencil for σ_{d+1,n} on V = Ma_{d,n}.
The entries of M are linear combinations of the d×d minors of X: on the
component W̃_j at level ε, M_j(X) is the trace-orthogonal projection of
Δ_I^{d-ε}(∧^d X) onto W̃_j, in the basis of W̃_j. One scale per component
is then solved for from the identity itself and checked at fresh points.

A certificate stores a Gram matrix G and a basis of polynomials q given
as minor combinations; the claim is qᵗ G q = target with G ⪰ 0. The
verifier below re-expands everything from the serialized form.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from . import polys
from .combinat import subsets
from .equivariant import (EquivariantPencil, _weights_h, sigma_matrix_pencil,
                          spec_for_ma)
from .exactla import (ONE, ZERO, NotPSDError, Q, RatMatrix, inverse,
                      ldlt_psd_decompose, psd_check, qstr, solve)
from .exterior import (delta_images_identity, sym_index,
                       t_basis, wedge_power)
from .hyperbolic import matrix_sigma

FORMAT = "hypercone-certificate/1"


class CalibrationError(RuntimeError):
    pass


class CertificateError(ValueError):
    pass


def random_symmetric(n: int, rng: random.Random, bound: int = 5) -> RatMatrix:
    a = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = Q(rng.randint(-bound, bound)) / rng.randint(1, 3)
    return RatMatrix(a)


@dataclass
class MinorVector:
    """M(X) = T·z(X), z(X) = u-coordinates of ∧^d X."""

    n: int
    d: int
    T: RatMatrix
    w: list

    @property
    def size(self) -> int:
        return self.T.rows

    def z(self, X: RatMatrix) -> list:
        if self.d == 0:
            return [ONE]
        return t_basis(self.n, self.d).coords(wedge_power(X, self.d))

    def __call__(self, X: RatMatrix) -> list:
        z = self.z(X)
        return [sum((r[k] * z[k] for k in range(len(z)) if r[k] and z[k]), ZERO)
                for r in self.T._a]

    def minor_combinations(self) -> list:
        """Each entry as {(S, T): coefficient} over minors det X[S,T], S <= T."""
        tb = t_basis(self.n, self.d)
        tab = subsets(self.n, self.d)
        out = []
        for row in self.T._a:
            comb_: dict = {}
            for k, x in enumerate(row):
                if x:
                    e = tb[k]
                    S, T = tab[e.S], tab[e.T]
                    key = (S, T) if S <= T else (T, S)
                    # u-coordinate of a symmetric F at (S,T) is ς·F[S,T]
                    comb_[key] = comb_.get(key, ZERO) + x * e.sign
            out.append({k: v for k, v in comb_.items() if v})
        return out

    def polys(self) -> list:
        return [minor_combination_poly(self.n, c) for c in self.minor_combinations()]


def minor_combination_poly(n: int, comb_: dict) -> dict:
    out: dict = {}
    for (S, T), c in comb_.items():
        p = polys.minor(n, S, T) if S else polys.const(1)
        polys.add_into(out, p, Q(c))
    return out


def _projection_rows(EP: EquivariantPencil, d: int) -> RatMatrix:
    n = EP.n
    N = len(t_basis(n, d))
    rows = []
    for c, B in zip(EP.spec.components, EP.wbases):
        H = RatMatrix.diag(_weights_h(n, c.eps))
        D = RatMatrix.identity(N)
        for lev in range(d, c.eps, -1):
            D = delta_images_identity(n, lev) @ D
        rows.append(inverse(B.T @ H @ B) @ B.T @ H @ D)
    return RatMatrix.vstack(rows)


def _w_vector(EP: EquivariantPencil, P: RatMatrix) -> list:
    wv = (P.T @ RatMatrix.from_columns([[ONE] * P.rows], rows=P.rows)).col(0)
    w = [ZERO] * EP.size
    for i, x in zip(EP.v_indices(), wv):
        w[i] = x
    return w


@dataclass
class CalibratedIdentity:
    n: int
    d: int
    Phi: EquivariantPencil
    M: MinorVector
    w: list
    scales: list
    verified_points: int = 0

    def residual(self, X: RatMatrix) -> list:
        """Φ(X)·M(X) − w·P_{d+1}(X)."""
        m = self.M(X)
        F = self.Phi(X)
        p = matrix_sigma(X, self.d + 1)
        return [sum((F[r, k] * m[k] for k in range(len(m)) if m[k]), ZERO) - self.w[r] * p
                for r in range(F.rows)]


_CAL: dict = {}


def calibrate_identity(n: int, d: int, seed: int = 0, fresh: int = 50) -> CalibratedIdentity:
    """Fix the per-component scales in M so that Φ(X)M(X) = w·P_{d+1}(X)."""
    if not 0 <= d <= n - 1:
        raise ValueError("need 0 <= d <= n-1")
    key = (n, d, seed, fresh)
    if key in _CAL:
        return _CAL[key]
    EP = sigma_matrix_pencil(n, d + 1)
    _, P = spec_for_ma(n, d)
    T0 = _projection_rows(EP, d)
    w = _w_vector(EP, P)
    M0 = MinorVector(n, d, T0, w)
    blocks = EP.block_ranges()
    rng = random.Random(seed)
    rows, rhs = [], []
    for _ in range(2):
        X = random_symmetric(n, rng)
        m = M0(X)
        F = EP(X)
        p = matrix_sigma(X, d + 1)
        for r in range(EP.size):
            rows.append([sum((F[r, k] * m[k] for k in range(a, b) if m[k]), ZERO)
                         for _, a, b in blocks])
            rhs.append(w[r] * p)
    try:
        scales = solve(RatMatrix(rows, len(rows), len(blocks)), rhs, unique=True)
    except ValueError as e:
        raise CalibrationError(f"no consistent scaling for (n,d)=({n},{d}): {e}") from None
    if any(s <= 0 for s in scales):
        raise CalibrationError(f"non-positive block scale {scales}")
    Ts = []
    for (_, a, b), s in zip(blocks, scales):
        Ts.append(T0.submatrix(range(a, b), range(T0.cols)).scale(s))
    M = MinorVector(n, d, RatMatrix.vstack(Ts), w)
    cal = CalibratedIdentity(n, d, EP, M, w, list(scales))
    for _ in range(fresh):
        X = random_symmetric(n, rng)
        if any(cal.residual(X)):
            raise CalibrationError(f"identity fails at a fresh point for (n,d)=({n},{d})")
        if sum((a * b for a, b in zip(w, M(X))), ZERO) != matrix_sigma(X, d):
            raise CalibrationError("wᵗM(X) differs from P_d(X)")
    cal.verified_points = fresh
    _CAL[key] = cal
    return cal


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    """qᵗ·gram·q = target with gram ⪰ 0.

    basis: list of {(S, T): coeff} minor combinations for matrix targets
    (variables are the entries of X), or of {(S,): coeff} monomials x_S
    for classical targets.
    """

    kind: str
    n: int
    d: int
    gram: RatMatrix
    basis: list
    A: Optional[RatMatrix] = None
    meta: dict = field(default_factory=dict)
    squares: Optional[list] = None

    @property
    def classical(self) -> bool:
        return self.kind == "newton-classical"

    def basis_polys(self) -> list:
        if self.classical:
            return [_monomial_comb_poly(self.n, c) for c in self.basis]
        return [minor_combination_poly(self.n, c) for c in self.basis]

    def nvars(self) -> int:
        return self.n if self.classical else self.n * (self.n + 1) // 2


def _monomial_comb_poly(n: int, comb_: dict) -> dict:
    out: dict = {}
    for (S,), c in comb_.items():
        p = polys.const(1)
        for i in S:
            p = polys.mul(p, polys.var(i))
        polys.add_into(out, p, Q(c))
    return out


def _check_interior(n: int, d: int, A: RatMatrix):
    from .hyperbolic import matrix_sigma_instance, root_cone_member
    if A.shape != (n, n) or not A.is_symmetric():
        raise ValueError("A must be a symmetric n×n matrix")
    pd, pd1 = matrix_sigma(A, d), matrix_sigma(A, d + 1)
    if pd <= 0:
        raise ValueError(f"A is not in the open cone: P_{d}(A) = {pd} is not positive")
    if pd1 <= 0:
        raise ValueError(f"A is not in the open cone: P_{d + 1}(A) = {pd1} is not positive")
    h = matrix_sigma_instance(n, d + 1)
    if not root_cone_member(h, [A[i, j] for i, j in sym_index(n)]):
        raise ValueError(f"A is not in the hyperbolicity cone of P_{d + 1}")
    return pd, pd1


def wronskian_gram(n: int, d: int, A: RatMatrix, seed: int = 0) -> Certificate:
    """Gram = Φ(A) − (P_{d+1}(A)/P_d(A))·w·wᵗ in the basis M."""
    pd, pd1 = _check_interior(n, d, A)
    cal = calibrate_identity(n, d, seed)
    r = pd1 / pd
    w = cal.w
    F = cal.Phi(A)
    m = F.rows
    G = RatMatrix([[F[i, j] - r * w[i] * w[j] for j in range(m)] for i in range(m)], m, m)
    MA = cal.M(A)
    if any(sum((G[i, k] * MA[k] for k in range(m)), ZERO) for i in range(m)):
        raise AssertionError("Gram·M(A) is not zero")
    if not psd_check(G):
        raise NotPSDError("Wronskian Gram matrix is not PSD", None)
    return Certificate("wronskian", n, d, G, cal.M.minor_combinations(), A,
                       {"ratio": qstr(r), "scales": [qstr(s) for s in cal.scales]})


def newton_kappa(n: int, d: int):
    """Wronskian at A = I divided by the binomial-normalized Newton form."""
    return Q(comb(n, d) ** 2 * d * (n - d)) / (d + 1)


def newton_matrix_certificate(n: int, d: int) -> Certificate:
    """(P_d/C(n,d))² − (P_{d+1}/C(n,d+1))(P_{d-1}/C(n,d-1)) as qᵗGq."""
    if not 1 <= d <= n - 1:
        raise ValueError("need 1 <= d <= n-1")
    W = wronskian_gram(n, d, RatMatrix.identity(n))
    k = newton_kappa(n, d)
    return Certificate("newton-matrix", n, d, W.gram.scale(1 / k), W.basis, None,
                       {"kappa": qstr(k), "ratio": W.meta["ratio"]})


def newton_classical_certificate(n: int, d: int) -> Certificate:
    """The diagonal restriction, written on the monomials x_S, |S| = d."""
    if not 1 <= d <= n - 1:
        raise ValueError("need 1 <= d <= n-1")
    cal = calibrate_identity(n, d)
    W = newton_matrix_certificate(n, d)
    _, P = spec_for_ma(n, d)
    idx = cal.Phi.v_indices()
    Gv = W.gram.submatrix(idx, idx)
    Pinv = inverse(P)
    G = Pinv.T @ Gv @ Pinv
    basis = [{(S,): ONE} for S in subsets(n, d)]
    return Certificate("newton-classical", n, d, G, basis, None, {"kappa": W.meta["kappa"]})


# ---------------------------------------------------------------------------
# targets (computed from the target description only)


def target_poly(kind: str, n: int, d: int, A: Optional[RatMatrix] = None) -> dict:
    if kind == "newton-classical":
        nv = n

        def s(k):
            if k < 0 or k > n:
                return {}
            out: dict = {}
            for S in subsets(n, k):
                p = polys.const(1)
                for i in S:
                    p = polys.mul(p, polys.var(i))
                polys.add_into(out, p, 1)
            return out
    else:
        nv = n * (n + 1) // 2

        def s(k):
            if k < 0 or k > n:
                return {}
            return polys.matrix_sigma_poly(n, k)
    if kind in ("newton-matrix", "newton-classical"):
        a = polys.scale(polys.mul(s(d), s(d)), Q(1) / comb(n, d) ** 2)
        b = polys.scale(polys.mul(s(d + 1), s(d - 1)), Q(1) / (comb(n, d + 1) * comb(n, d - 1)))
        return polys.add(a, b, -1)
    if kind == "wronskian":
        if A is None:
            raise CertificateError("wronskian target needs A")
        av = [A[i, j] for i, j in sym_index(n)]
        # directional derivative along A: the symmetric coordinate x_ij
        # carries the entry of both (i,j) and (j,i), so D_A = Σ_v A_v ∂_v
        pd, pd1 = s(d), s(d + 1)
        r = polys.evaluate(pd1, av) / polys.evaluate(pd, av)
        t1 = polys.mul(polys.directional(pd1, av, nv), pd)
        t2 = polys.mul(pd1, polys.directional(pd, av, nv))
        t3 = polys.scale(polys.mul(pd, pd), r)
        return polys.add(polys.add(t1, t2, -1), t3, -1)
    raise CertificateError(f"unknown target kind {kind!r}")


def quadratic_form_poly(gram: RatMatrix, basis_polys: list) -> dict:
    out: dict = {}
    m = gram.rows
    for i in range(m):
        row = gram._a[i]
        gi: dict = {}
        for j in range(m):
            if row[j]:
                polys.add_into(gi, basis_polys[j], row[j])
        if gi:
            polys.add_into(out, polys.mul(basis_polys[i], gi), 1)
    return out


# ---------------------------------------------------------------------------
# squares


def sos_decompose(cert: Certificate) -> list:
    """[(c_i, q_i)] with Σ c_i q_i² = qᵗGq, from LDLᵗ of the Gram matrix.

    q_i is returned as a minor (or monomial) combination dict."""
    f = ldlt_psd_decompose(cert.gram)
    m = cert.gram.rows
    # Pᵗ G P = L D Lᵗ, so qᵗGq = Σ_i D_i ((Lᵗ Pᵗ q)_i)²
    perm = f.perm
    out = []
    for i in range(m):
        c = f.D[i]
        if not c:
            continue
        comb_: dict = {}
        for k in range(m):
            x = f.L[k, i]
            if x:
                for key, y in cert.basis[perm[k]].items():
                    comb_[key] = comb_.get(key, ZERO) + x * y
        out.append((c, {k: v for k, v in comb_.items() if v}))
    cert.squares = out
    return out


# ---------------------------------------------------------------------------
# serialization and independent verification


def _key_to_json(key, classical: bool):
    if classical:
        return {"S": [i + 1 for i in key[0]]}
    return {"S": [i + 1 for i in key[0]], "T": [i + 1 for i in key[1]]}


def _key_from_json(obj, classical: bool):
    S = tuple(i - 1 for i in obj["S"])
    if classical:
        return (S,)
    return (S, tuple(i - 1 for i in obj["T"]))


def _comb_to_json(comb_: dict, classical: bool) -> list:
    return [dict(_key_to_json(k, classical), c=qstr(v)) for k, v in sorted(comb_.items())]


def to_json(cert: Certificate) -> dict:
    m = cert.gram.rows
    doc = {
        "format": FORMAT,
        "gram": [[qstr(cert.gram[i, j]) for j in range(m)] for i in range(m)],
        "basis": [{"degree": cert.d, "terms": _comb_to_json(c, cert.classical)}
                  for c in cert.basis],
        "target": {"kind": cert.kind, "n": cert.n, "d": cert.d,
                   "A": None if cert.A is None else
                   [[qstr(cert.A[i, j]) for j in range(cert.n)] for i in range(cert.n)]},
        "meta": cert.meta,
    }
    if cert.squares is not None:
        doc["squares"] = [{"c": qstr(c), "terms": _comb_to_json(q, cert.classical)}
                          for c, q in cert.squares]
    return doc


def from_json(doc: dict) -> Certificate:
    if doc.get("format") != FORMAT:
        raise CertificateError("unknown certificate format")
    t = doc["target"]
    kind = t["kind"]
    classical = kind == "newton-classical"
    gram = RatMatrix([[Q(x) for x in row] for row in doc["gram"]])
    basis = [{_key_from_json(e, classical): Q(e["c"]) for e in b["terms"]} for b in doc["basis"]]
    A = None if t.get("A") is None else RatMatrix([[Q(x) for x in row] for row in t["A"]])
    cert = Certificate(kind, int(t["n"]), int(t["d"]), gram, basis, A, doc.get("meta", {}))
    if "squares" in doc:
        cert.squares = [(Q(s["c"]), {_key_from_json(e, classical): Q(e["c"]) for e in s["terms"]})
                        for s in doc["squares"]]
    return cert


def dump(cert: Certificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(cert), fh, indent=1)


def load(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return from_json(json.load(fh))


@dataclass
class VerifyResult:
    ok: bool
    checks: list  # (name, passed, detail)

    @property
    def first_failure(self):
        for name, ok, detail in self.checks:
            if not ok:
                return name, detail
        return None


def _prime_points(nv: int, count: int) -> list:
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]
    out = []
    for k in range(count):
        out.append([Q(primes[(v + k) % len(primes)] * (1 if (v * k) % 3 else -1)) / (k % 4 + 1)
                    for v in range(nv)])
    return out


def verify(cert: Certificate, points: int = 30) -> VerifyResult:
    """PSD test, symbolic residual, point residuals, squares (if present)."""
    checks = []
    g = cert.gram
    sym = g.is_square() and g.is_symmetric()
    checks.append(("gram-symmetric", sym, ""))
    if not sym:
        return VerifyResult(False, checks)
    checks.append(("gram-size", g.rows == len(cert.basis), f"{g.rows} vs {len(cert.basis)}"))
    if g.rows != len(cert.basis):
        return VerifyResult(False, checks)
    checks.append(("gram-psd", psd_check(g), ""))
    nv = cert.nvars()
    try:
        target = target_poly(cert.kind, cert.n, cert.d, cert.A)
    except (CertificateError, ZeroDivisionError) as e:
        checks.append(("target", False, str(e)))
        return VerifyResult(False, checks)
    qs = cert.basis_polys()
    lhs = quadratic_form_poly(g, qs)
    diff = polys.add(lhs, target, -1)
    checks.append(("residual-symbolic", not diff, f"{len(diff)} nonzero terms"))
    bad = 0
    for x in _prime_points(nv, points):
        qv = [polys.evaluate(q, x) for q in qs]
        val = sum((qv[i] * g[i, j] * qv[j] for i in range(g.rows) for j in range(g.rows)
                   if g[i, j]), ZERO)
        if val != polys.evaluate(target, x):
            bad += 1
    checks.append(("residual-points", bad == 0, f"{bad} of {points} points differ"))
    if cert.squares is not None:
        tot: dict = {}
        okc = all(c >= 0 for c, _ in cert.squares)
        for c, q in cert.squares:
            p = _monomial_comb_poly(cert.n, q) if cert.classical else minor_combination_poly(cert.n, q)
            polys.add_into(tot, polys.mul(p, p), c)
        checks.append(("squares", okc and not polys.add(tot, target, -1), ""))
    return VerifyResult(all(c[1] for c in checks), checks)
