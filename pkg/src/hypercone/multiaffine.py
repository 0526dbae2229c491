"""Multiaffine forms Ma_{d,n}, directional derivatives, and the chain
decomposition of Ma_{d,n} into the pieces V_{n-i,i}.

Elements are coefficient vectors on the square-free monomials x_S, with S
running over the d-subsets of range(n) in lex order. The monomials are an
orthonormal basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .combinat import binom, subsets
from .exactla import (ONE, ZERO, Q, RatMatrix, dot, kernel_basis, rank, vec)


@dataclass(frozen=True)
class MaElement:
    n: int
    d: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != binom(self.n, self.d):
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def from_dict(cls, n, d, terms) -> "MaElement":
        T = subsets(n, d)
        c = [ZERO] * len(T)
        for s, v in terms.items():
            c[T.rank(s)] += Q(v)
        return cls(n, d, tuple(c))

    def terms(self) -> dict:
        T = subsets(self.n, self.d)
        return {T[i]: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, o):
        return MaElement(self.n, self.d, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, o):
        return MaElement(self.n, self.d, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def scale(self, c):
        c = Q(c)
        return MaElement(self.n, self.d, tuple(c * a for a in self.coeffs))

    def inner(self, o) -> "Q":
        return dot(self.coeffs, o.coeffs)

    def __call__(self, x):
        x = vec(x)
        s = ZERO
        for S, c in self.terms().items():
            p = c
            for i in S:
                p *= x[i]
            s += p
        return s

    def __repr__(self):
        t = self.terms()
        if not t:
            return "0"
        return " + ".join(f"{c}*x{''.join(str(i + 1) for i in S)}" if S else str(c) for S, c in t.items())


def sigma(d: int, I, n: int) -> MaElement:
    """σ_d(I) as an element of Ma_{d,n}."""
    I = frozenset(I)
    if not 0 <= d <= len(I):
        raise ValueError(f"σ_{d} of a set with {len(I)} elements")
    T = subsets(n, d)
    return MaElement(n, d, tuple(ONE if I.issuperset(S) else ZERO for S in T))


def sigma_value(d: int, x) -> "Q":
    """σ_d(x) by the e_k recurrence, exact."""
    e = [ONE] + [ZERO] * d
    for xi in vec(x):
        for k in range(d, 0, -1):
            e[k] += xi * e[k - 1]
    return e[d] if d >= 0 else ZERO


def sigma_all(x) -> list:
    """[σ_0(x), ..., σ_n(x)]."""
    x = vec(x)
    e = [ONE] + [ZERO] * len(x)
    for xi in x:
        for k in range(len(x), 0, -1):
            e[k] += xi * e[k - 1]
    return e


def deriv_matrix(a, n: int, d: int) -> RatMatrix:
    """Matrix of D_a: Ma_{d,n} -> Ma_{d-1,n} in monomial bases."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    a = vec(a)
    src, dst = subsets(n, d), subsets(n, d - 1)
    M = [[ZERO] * len(src) for _ in range(len(dst))]
    for j, S in enumerate(src):
        for i in S:
            if a[i]:
                T = tuple(k for k in S if k != i)
                M[dst.rank(T)][j] += a[i]
    return RatMatrix._wrap(M, len(dst), len(src))


def deriv_e_power(n: int, d: int, k: int) -> RatMatrix:
    """Matrix of D_e^k: Ma_{d,n} -> Ma_{d-k,n}; entry k! when T ⊂ S."""
    if not 0 <= k <= d <= n:
        raise ValueError("need 0 <= k <= d <= n")
    src, dst = subsets(n, d), subsets(n, d - k)
    f = Q(factorial(k))
    M = [[ZERO] * len(src) for _ in range(len(dst))]
    for j, S in enumerate(src):
        Sset = set(S)
        for i, T in enumerate(dst):
            if Sset.issuperset(T):
                M[i][j] = f
    return RatMatrix._wrap(M, len(dst), len(src))


def gram_schmidt(B: RatMatrix) -> RatMatrix:
    """Orthogonalize columns (no normalization, stays rational)."""
    out = []
    norms = []
    for v in B.columns():
        w = list(v)
        for u, nu in zip(out, norms):
            c = dot(w, u) / nu
            if c:
                w = [a - c * b for a, b in zip(w, u)]
        nw = dot(w, w)
        if nw:
            out.append(w)
            norms.append(nw)
    return RatMatrix.from_columns(out, rows=B.rows)


@dataclass(frozen=True)
class ChainComponent:
    i: int
    label: tuple  # (n-i, i)
    basis: RatMatrix  # columns in the ambient coordinates


@dataclass(frozen=True)
class ChainDecomposition:
    n: int
    d: int
    dim: int
    components: tuple  # ChainComponent, increasing i

    def component(self, i: int) -> ChainComponent:
        for c in self.components:
            if c.i == i:
                return c
        raise KeyError(i)


def chain_component_dim(n: int, i: int) -> int:
    return binom(n, i) - binom(n, i - 1)


_chain_cache: dict = {}


def chain_decompose_ma(n: int, d: int) -> ChainDecomposition:
    """Split Ma_{d,n} into V_{n-i,i}, 0 <= i <= min(d, n-d).

    The piece for i is ker(D_e^{d-i+1}) intersected with the orthogonal
    complement of the pieces already found, working from the largest i down.
    """
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got n={n}, d={d}")
    key = (n, d)
    if key in _chain_cache:
        return _chain_cache[key]
    N = binom(n, d)
    top = min(d, n - d)
    found = []
    for i in range(top, -1, -1):
        k = d - i + 1
        if k <= d:
            D = deriv_e_power(n, d, k)
            rows = D.tolist()
        else:
            rows = []  # D_e^{d+1} is zero on Ma_{d,n}
        for c in found:
            rows.extend(c.basis.T.tolist())
        K = kernel_basis(RatMatrix(rows)) if rows else RatMatrix.identity(N)
        basis = gram_schmidt(K)
        assert basis.cols == chain_component_dim(n, i), (n, d, i, basis.cols)
        found.append(ChainComponent(i, (n - i, i), basis))
    dec = ChainDecomposition(n, d, N, tuple(reversed(found)))
    _chain_cache[key] = dec
    return dec


def iota(d: int, n: int) -> RatMatrix:
    """Matrix of ι_d: R^n -> Ma_{d,n}, δ_i -> x_i σ_{d-1}([n] minus i)."""
    if not 0 < d < n:
        raise ValueError(f"ι_d needs 0 < d < n, got n={n}, d={d}")
    T = subsets(n, d)
    return RatMatrix([[ONE if i in S else ZERO for i in range(n)] for S in T])


def permutation_action(n: int, d: int, perm) -> RatMatrix:
    """Matrix of x_i -> x_{perm[i]} on Ma_{d,n}."""
    T = subsets(n, d)
    M = [[ZERO] * len(T) for _ in range(len(T))]
    for j, S in enumerate(T):
        M[T.rank(tuple(sorted(perm[i] for i in S)))][j] = ONE
    return RatMatrix._wrap(M, len(T), len(T))


def restriction_to_fewer_vars(n: int, d: int) -> RatMatrix:
    """Inclusion Ma_{d,n-1} -> Ma_{d,n} (x_n does not occur)."""
    src, dst = subsets(n - 1, d), subsets(n, d)
    M = [[ZERO] * len(src) for _ in range(len(dst))]
    for j, S in enumerate(src):
        M[dst.rank(S)][j] = ONE
    return RatMatrix._wrap(M, len(dst), len(src))


def kneser_psi_matrix(n: int, d: int) -> RatMatrix:
    """Ψ = ψ∘D_e^{n-2d}: Ma_{n-d,n} -> Ma_{n-d,n} for 2d <= n.

    ψ sends x_T (|T| = d) to x_{T^c}/(n-2d)!. Rows and columns are indexed
    by the (n-d)-subsets in lex order.
    """
    if not 0 <= 2 * d <= n:
        raise ValueError("need 2d <= n")
    D = deriv_e_power(n, n - d, n - 2 * d)
    small, big = subsets(n, d), subsets(n, n - d)
    f = Q(factorial(n - 2 * d))
    out = [[ZERO] * len(big) for _ in range(len(big))]
    for r, T in enumerate(small):
        Tc = tuple(i for i in range(n) if i not in T)
        out[big.rank(Tc)] = [x / f for x in D.row(r)]
    return RatMatrix(out)


def is_full_rank(M: RatMatrix) -> bool:
    return rank(M) == min(M.rows, M.cols)
