"""The word-indexed pencil B(x) for σ_{d,n}, its kernel vector m(x), the
0/1 compression Q and the compressed pencil B̃(x) of size C(n, d-1).
"""

from __future__ import annotations

from math import factorial

from .combinat import label, subsets, words
from .exactla import (ONE, ZERO, Q, RatMatrix, psd_check, psd_witness, vec)
from .multiaffine import MaElement, sigma


class SymPencil:
    """x ↦ Σ x_i A_i with symmetric coefficient matrices."""

    def __init__(self, coeffs, labels=None, var_labels=None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a pencil needs at least one variable")
        m = coeffs[0].rows
        for A in coeffs:
            if A.shape != (m, m):
                raise ValueError("coefficient matrices differ in size")
            if not A.is_symmetric():
                raise ValueError("coefficient matrices must be symmetric")
        self.n = len(coeffs)
        self.size = m
        self.coeffs = tuple(coeffs)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(m)]
        self.var_labels = list(var_labels) if var_labels is not None else \
            [f"x{i + 1}" for i in range(self.n)]

    def __call__(self, a) -> RatMatrix:
        a = vec(a)
        if len(a) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(a)}")
        out = [[ZERO] * self.size for _ in range(self.size)]
        for x, A in zip(a, self.coeffs):
            if x:
                for r, row in enumerate(A._a):
                    o = out[r]
                    for c, y in enumerate(row):
                        if y:
                            o[c] += x * y
        return RatMatrix(out, self.size, self.size)

    def __eq__(self, other):
        return isinstance(other, SymPencil) and self.coeffs == other.coeffs

    def congruence(self, P: RatMatrix) -> "SymPencil":
        return SymPencil([A.congruence(P) for A in self.coeffs], var_labels=self.var_labels)

    def permuted_vars(self, perm) -> "SymPencil":
        """Pencil x ↦ A(x∘perm), i.e. coefficient i moves to slot perm[i]."""
        c = [None] * self.n
        for i, p in enumerate(perm):
            c[p] = self.coeffs[i]
        return SymPencil(c, self.labels, self.var_labels)

    def is_member(self, a) -> bool:
        return psd_check(self(a))

    def witness(self, a):
        return psd_witness(self(a))


def branden_pencil(n: int, d: int) -> SymPencil:
    """B(x) on words of length < d with distinct letters."""
    W = words(n, d)
    m = len(W)
    A = [[[ZERO] * m for _ in range(m)] for _ in range(n)]
    for r, w in enumerate(W):
        l = len(w)
        f = Q(factorial(d - 1 - l))
        ws = set(w)
        for j in range(n):
            if j not in ws:
                A[j][r][r] += f
        if l:
            A[w[-1]][r][r] += f * (d - l)
            p = W.rank(w[:-1])
            c = -Q(factorial(d - l))
            A[w[-1]][r][p] += c
            A[w[-1]][p][r] += c
    return SymPencil([RatMatrix(a, m, m) for a in A], [label(w) for w in W])


def kernel_vector(n: int, d: int) -> list:
    """m(x): entry at w is Π x_{w_i}·σ_{d-1-l}([n] minus w), as MaElements
    of degree d-1."""
    out = []
    for w in words(n, d):
        rest = [j for j in range(n) if j not in w]
        s = sigma(d - 1 - len(w), rest, n)
        terms = {}
        for S, c in s.terms().items():
            terms[tuple(sorted(S + w))] = c
        out.append(MaElement.from_dict(n, d - 1, terms))
    return out


def compression_matrix(n: int, d: int) -> RatMatrix:
    """Q: rows are words, columns (d-1)-subsets; 1 iff all letters lie in I."""
    W, T = words(n, d), subsets(n, d - 1)
    return RatMatrix([[ONE if set(w) <= set(I) else ZERO for I in T] for w in W])


def compressed_pencil(n: int, d: int) -> SymPencil:
    """B̃(x) from the closed form (1/(d-|I∩J|))·Σ_{k ∉ I∪J} x_k."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    T = subsets(n, d - 1)
    m = len(T)
    A = [[[ZERO] * m for _ in range(m)] for _ in range(n)]
    sets = [set(I) for I in T]
    for r, I in enumerate(sets):
        for c, J in enumerate(sets):
            f = Q(1) / (d - len(I & J))
            for k in range(n):
                if k not in I and k not in J:
                    A[k][r][c] = f
    labels = ["{" + ",".join(str(i + 1) for i in I) + "}" for I in T]
    return SymPencil([RatMatrix(a, m, m) for a in A], labels)


def compressed_by_q(n: int, d: int) -> SymPencil:
    """(1/d!)·QᵗB(x)Q, the route through the full word pencil."""
    B, Qm = branden_pencil(n, d), compression_matrix(n, d)
    f = Q(1) / factorial(d)
    return SymPencil([A.congruence(Qm).scale(f) for A in B.coeffs])


def compressed_kernel(n: int, d: int) -> list:
    """m̃(x): the monomial basis of Ma_{d-1,n}."""
    T = subsets(n, d - 1)
    return [MaElement.from_dict(n, d - 1, {I: 1}) for I in T]


def sigma_cone_member(n: int, d: int, a) -> bool:
    """a in the hyperbolicity cone of σ_{d,n}, decided by PSD of B̃(a)."""
    a = vec(a)
    if len(a) != n:
        raise ValueError("point has the wrong length")
    return psd_check(compressed_pencil_cached(n, d)(a))


_cp_cache: dict = {}


def compressed_pencil_cached(n: int, d: int) -> SymPencil:
    key = (n, d)
    if key not in _cp_cache:
        _cp_cache[key] = compressed_pencil(n, d)
    return _cp_cache[key]


def smaller_nonsymmetric_example() -> SymPencil:
    """The 3×3 pencil A(x) in four variables for σ_{2,4} whose determinant
    is (3/4)(x1+x2+x3)·σ_{2,4}; it is not S_4-equivariant."""
    h = Q("1/2")
    # off-diagonal: (1,2) = x2/2 + x4, (1,3) = x1/2 + x4, (2,3) = x3/2 + x4
    x1 = RatMatrix([[1, 0, h], [0, 0, 0], [h, 0, 1]])
    x2 = RatMatrix([[1, h, 0], [h, 1, 0], [0, 0, 0]])
    x3 = RatMatrix([[0, 0, 0], [0, 1, h], [0, h, 1]])
    x4 = RatMatrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
    return SymPencil([x1, x2, x3, x4])
