"""Reference oracles that never touch an LMI: root-based cone membership,
P_d(X) two ways, Bézout matrices and interlacing, Wronskians.

A polynomial is handed around as a ``HyperbolicInstance``: an exact
evaluator, a direction e and a degree. Restrictions to lines are recovered
by interpolation at degree+1 integer nodes, which is exact for a
polynomial of known degree. Directional derivatives come from the same
line polynomials.
"""

from __future__ import annotations

from itertools import combinations
from math import comb, factorial

from .exactla import (ONE, ZERO, Q, RatMatrix, UniPoly, char_poly, det,
                      interpolate, roots_all_nonneg, sturm_real_rooted, vec)
from .exterior import sym_from_coords, sym_index
from .multiaffine import sigma_all, sigma_value


class NotHyperbolicError(ValueError):
    pass


class HyperbolicInstance:
    """Homogeneous polynomial h of known degree, hyperbolic in direction e.

    ``line_fn(x, v)`` may supply h(x + t v) in closed form; otherwise it is
    interpolated from ``fn``.
    """

    def __init__(self, fn, e, degree: int, name: str = "h", line_fn=None):
        self.fn = fn
        self.e = vec(e)
        self.nvars = len(self.e)
        self.degree = degree
        self.name = name
        self._line = line_fn
        if not fn(self.e) > 0:
            raise ValueError("h(e) must be positive")

    def __call__(self, x):
        return self.fn(vec(x))

    def line(self, x, v) -> UniPoly:
        """h(x + t v) as a polynomial in t."""
        x, v = vec(x), vec(v)
        if self._line is not None:
            return self._line(x, v)
        ts = list(range(self.degree + 1))
        ys = [self.fn([a + t * b for a, b in zip(x, v)]) for t in ts]
        return interpolate(ts, ys)

    def restrict(self, a) -> UniPoly:
        """h(t e − a)."""
        return self.line([-c for c in vec(a)], self.e)

    def D(self, a, x):
        """D_a h(x)."""
        return self.line(x, a).coeff(1)

    def DD(self, a, b, x):
        """D_a D_b h(x) by polarization of second derivatives."""
        a, b = vec(a), vec(b)
        ab = [p + q for p, q in zip(a, b)]
        return self.line(x, ab).coeff(2) - self.line(x, a).coeff(2) - self.line(x, b).coeff(2)


def _sigma_line(n: int, d: int):
    def line(x, v):
        # only needed in the case v = e, the generating recurrence in
        # shifted variables: σ_d(x + t e) = Σ_k C(n-k, d-k) σ_k(x) t^{d-k}
        if all(c == 1 for c in v):
            s = sigma_all(x)
            return UniPoly([Q(comb(n - d + j, j)) * s[d - j] for j in range(d + 1)])
        ts = list(range(d + 1))
        return interpolate(ts, [sigma_value(d, [a + t * b for a, b in zip(x, v)]) for t in ts])
    return line


def sigma_instance(n: int, d: int) -> HyperbolicInstance:
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    return HyperbolicInstance(lambda x: sigma_value(d, x), [ONE] * n, d,
                              f"sigma_{d},{n}", _sigma_line(n, d))


def _identity_coords(n: int) -> list:
    return [ONE if i == j else ZERO for i, j in sym_index(n)]


def det_instance(n: int) -> HyperbolicInstance:
    """det on Sym₂(ℝⁿ); coordinates are the upper-triangle entries."""
    return HyperbolicInstance(lambda c: det(sym_from_coords(n, c)),
                              _identity_coords(n), n, f"det_{n}")


def matrix_sigma_instance(n: int, d: int) -> HyperbolicInstance:
    """P_d on Sym₂(ℝⁿ) in upper-triangle coordinates."""
    return HyperbolicInstance(lambda c: matrix_sigma(sym_from_coords(n, c), d),
                              _identity_coords(n), d, f"P_{d},{n}")


def derivative_instance(h: HyperbolicInstance, k: int) -> HyperbolicInstance:
    """The Renegar derivative D_e^k h, evaluated as k!·[t^k] h(x + t e)."""
    if not 0 <= k <= h.degree:
        raise ValueError("derivative order out of range")
    f = factorial(k)
    return HyperbolicInstance(lambda x: f * h.line(x, h.e).coeff(k), h.e,
                              h.degree - k, f"D^{k} {h.name}")


def root_cone_member(h: HyperbolicInstance, a) -> bool:
    """All roots of h(t e − a) are real and nonnegative."""
    p = h.restrict(a)
    if not sturm_real_rooted(p):
        raise NotHyperbolicError(f"{h.name}(te - a) is not real-rooted")
    return roots_all_nonneg(p)


def matrix_sigma(X: RatMatrix, d: int):
    """P_d(X) = σ_d(λ(X)), read off det(tI + X)."""
    n = X.rows
    if not 0 <= d <= n:
        return ZERO
    return char_poly(-X).coeff(n - d)


def matrix_sigma_minors(X: RatMatrix, d: int):
    """P_d(X) as the sum of the principal d×d minors."""
    n = X.rows
    s = ZERO
    for S in combinations(range(n), d):
        s += det(X.submatrix(S, S)) if d else ONE
    return s


def bezout_matrix(f: UniPoly, g: UniPoly) -> RatMatrix:
    """B with (f(s)g(t) − f(t)g(s))/(s − t) = Σ b_ij s^i t^j (0-based)."""
    if f.is_zero():
        raise ValueError("f must be nonzero")
    d = f.degree
    if g.degree > d - 1:
        raise ValueError("g must have degree below deg f")
    B = [[ZERO] * d for _ in range(d)]
    fc = [f.coeff(k) for k in range(d + 1)]
    gc = [g.coeff(k) for k in range(d + 1)]
    for p in range(d + 1):
        for q in range(p):
            c = fc[p] * gc[q] - fc[q] * gc[p]
            if not c:
                continue
            # (s^p t^q − s^q t^p)/(s − t) = (st)^q Σ_k s^k t^{p-q-1-k}
            for k in range(p - q):
                B[q + k][p - 1 - k] += c
    return RatMatrix(B, d, d)


def interlaces(alpha, beta) -> bool:
    """β interlaces α: α_1 ≤ β_1 ≤ α_2 ≤ … ≤ β_{d-1} ≤ α_d, ties allowed."""
    a, b = sorted(vec(alpha)), sorted(vec(beta))
    if len(b) != len(a) - 1:
        return False
    return all(a[i] <= b[i] <= a[i + 1] for i in range(len(b)))


def wronskian_eval(h: HyperbolicInstance, a, b, x):
    """Δ_{a,b}(h)(x) = D_a h·D_b h − h·D_a D_b h."""
    return h.D(a, x) * h.D(b, x) - h(x) * h.DD(a, b, x)


def bezout_corners(h: HyperbolicInstance, a, x):
    """Bézout matrix of f(t) = h(te + x) and g(t) = D_a h(te + x), plus the
    three corner values predicted in closed form: (B, b00, b0last, blastlast)."""
    e, x, a = h.e, vec(x), vec(a)
    f = h.line(x, e)
    ts = list(range(h.degree))
    g = interpolate(ts, [h.D(a, [xi + t * ei for xi, ei in zip(x, e)]) for t in ts]) \
        if h.degree else UniPoly()
    B = bezout_matrix(f, g)
    he = h(e)
    return B, wronskian_eval(h, e, a, x), he * h.D(a, x), he * h.D(a, e)
