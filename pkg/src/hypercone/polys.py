"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a plain dict {monomial key: coefficient}. The key packs an
exponent vector into one integer, 6 bits per variable (exponents stay
below 64 for everything this package builds). Plain dicts keep products
fast enough for the symbolic residual checks.

Polynomials on Sym₂(R^n) use one variable per entry x_ij, i <= j, in
``sym_index`` order, so X = Σ x_v·(E_ij + E_ji) (E_ii on the diagonal).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .exactla import ZERO, Q, vec
from .exterior import perm_sign, sym_index

BITS = 6
MASK = (1 << BITS) - 1


def var(i: int, c=1) -> dict:
    return {1 << (BITS * i): Q(c)}


def const(c) -> dict:
    c = Q(c)
    return {0: c} if c else {}


def add(p: dict, q: dict, c=1) -> dict:
    """p + c·q."""
    out = dict(p)
    c = Q(c)
    for k, v in q.items():
        s = out.get(k, ZERO) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def add_into(acc: dict, q: dict, c) -> None:
    """acc += c·q in place."""
    for k, v in q.items():
        s = acc.get(k, ZERO) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def scale(p: dict, c) -> dict:
    c = Q(c)
    return {k: c * v for k, v in p.items()} if c else {}


def mul(p: dict, q: dict) -> dict:
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = k1 + k2
            out[k] = out.get(k, ZERO) + v1 * v2
    return {k: v for k, v in out.items() if v}


def exponents(key: int, nvars: int) -> tuple:
    return tuple((key >> (BITS * i)) & MASK for i in range(nvars))


def evaluate(p: dict, x) -> "Q":
    x = vec(x)
    s = ZERO
    for key, c in p.items():
        t = c
        i = 0
        while key:
            e = key & MASK
            if e:
                t *= x[i] ** e
            key >>= BITS
            i += 1
        s += t
    return s


def deriv(p: dict, i: int) -> dict:
    sh = BITS * i
    out = {}
    for key, c in p.items():
        e = (key >> sh) & MASK
        if e:
            out[key - (1 << sh)] = c * e
    return out


def directional(p: dict, a, nvars: int) -> dict:
    """Σ_v a_v ∂p/∂x_v."""
    out: dict = {}
    for i, ai in enumerate(vec(a)[:nvars]):
        if ai:
            add_into(out, deriv(p, i), ai)
    return out


def degree(p: dict, nvars: int) -> int:
    return max((sum(exponents(k, nvars)) for k in p), default=-1)


def to_terms(p: dict, nvars: int) -> list:
    """[(exponent tuple, coefficient)] sorted by exponent tuple."""
    return sorted((exponents(k, nvars), c) for k, c in p.items())


def from_terms(terms, nvars: int) -> dict:
    out: dict = {}
    for exps, c in terms:
        key = 0
        for i, e in enumerate(exps):
            key |= e << (BITS * i)
        out[key] = out.get(key, ZERO) + Q(c)
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# polynomials on symmetric matrices


@lru_cache(maxsize=None)
def _sym_var_index(n: int) -> dict:
    idx = {}
    for v, (i, j) in enumerate(sym_index(n)):
        idx[(i, j)] = idx[(j, i)] = v
    return idx


def minor(n: int, S, T) -> dict:
    """det X[S,T] for the generic symmetric X."""
    S, T = tuple(S), tuple(T)
    return dict(_minor(n, S, T))


@lru_cache(maxsize=None)
def _minor(n: int, S: tuple, T: tuple) -> tuple:
    if S > T:
        S, T = T, S
    vi = _sym_var_index(n)
    out: dict = {}
    for p in permutations(range(len(T))):
        key = 0
        for r, c in zip(S, p):
            key += 1 << (BITS * vi[(r, T[c])])
        out[key] = out.get(key, ZERO) + perm_sign(p)
    return tuple((k, Q(v)) for k, v in out.items() if v)


def matrix_sigma_poly(n: int, d: int) -> dict:
    """P_d(X) as the sum of principal d×d minors."""
    from itertools import combinations
    out: dict = {}
    for S in combinations(range(n), d):
        add_into(out, minor(n, S, S), 1)
    return out if d else const(1)


def sym_point(X) -> list:
    """Coordinates x_v of a symmetric matrix."""
    n = X.rows
    return [X[i, j] for i, j in sym_index(n)]
