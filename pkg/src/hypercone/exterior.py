"""Wedge powers, the contraction maps ψ_v, the operator Δ_A on
Sym₂(∧^d R^n), additive compounds, the t-basis and its blocks.

Elements of Sym₂(∧^d R^n) are handled as symmetric N×N matrices F
(N = C(n,d), rows/cols indexed by e_S in lex order), with the trace
scalar product ⟨F,G⟩ = tr(FG).

Coordinates. The orthonormal t-basis has off-diagonal members
(√2/2)(E_ST + E_TS). To stay rational we work in the "u-basis"
u = E_SS (diagonal) or u = E_ST + E_TS (off-diagonal), i.e. u = √2·t off the
diagonal. ``weight2`` records the squared factor t = w·u (1 or 1/2), so any
t-basis Gram entry is u-Gram[k,l]·w_k·w_l; within one block T_{J1,J2} all
elements share the same weight, which is what keeps blockwise t-quantities
rational.

Every off-diagonal u carries a sign ς(I,J1,J2) fixed so that for diagonal
A one has Δ_A(u_{I,J1,J2}) = Σ_{i∈I} a_i u_{I-i,J1,J2} with no stray signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .combinat import binom, subsets
from .exactla import ONE, ZERO, Q, RatMatrix, kernel_basis, vec


# ---------------------------------------------------------------------------
# wedge signs


def perm_sign(seq) -> int:
    """Sign of the permutation sorting seq (0 if an entry repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def hodge_sign(S, n: int) -> int:
    """s(S) with e_S ∧ e_{S^c} = s(S)·e_[n]."""
    Sset = set(S)
    Sc = [j for j in range(n) if j not in Sset]
    return perm_sign(list(S) + Sc)


@lru_cache(maxsize=None)
def psi_entries(n: int, d: int, i: int) -> tuple:
    """Nonzero entries (row in ∧^{d-1}, col in ∧^d, sign) of ψ_{δ_i}.

    ψ comes from ω ↦ ω∧δ_i on ∧^{n-d} through the duality
    e_S ↦ e_{S^c}⊗(e_S∧e_{S^c}).
    """
    src, dst = subsets(n, d), subsets(n, d - 1)
    out = []
    for c, T in enumerate(src):
        if i not in T:
            continue
        U = tuple(k for k in T if k != i)
        Tc = set(range(n)) - set(T)
        wedge = -1 if sum(1 for j in Tc if j > i) % 2 else 1
        sgn = hodge_sign(T, n) * wedge * hodge_sign(U, n)
        out.append((dst.rank(U), c, sgn))
    return tuple(out)


def psi_matrix(v, d: int) -> RatMatrix:
    """Matrix of ψ_v: ∧^d R^n -> ∧^{d-1} R^n, n = len(v)."""
    v = vec(v)
    n = len(v)
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    M = RatMatrix.zeros(binom(n, d - 1), binom(n, d)).tolist()
    for i, vi in enumerate(v):
        if vi:
            for r, c, s in psi_entries(n, d, i):
                M[r][c] += s * vi
    return RatMatrix(M)


# ---------------------------------------------------------------------------
# symmetric matrices Sym₂(R^n) and the linear pencils over them


def sym_index(n: int) -> list:
    """Basis of Sym₂(R^n): pairs (i,j), i <= j, lex order.
    (i,i) stands for E_ii and (i,j) for E_ij + E_ji."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym_coords(X: RatMatrix) -> list:
    n = X.rows
    return [X[i, j] for i, j in sym_index(n)]


def sym_from_coords(n: int, c) -> RatMatrix:
    c = vec(c)
    X = [[ZERO] * n for _ in range(n)]
    for (i, j), x in zip(sym_index(n), c):
        X[i][j] = X[j][i] = x
    return RatMatrix(X)


def sym_basis_matrix(n: int, k: int) -> RatMatrix:
    i, j = sym_index(n)[k]
    X = [[ZERO] * n for _ in range(n)]
    X[i][j] = X[j][i] = ONE
    return RatMatrix(X)


class MatPencil:
    """Linear map Sym₂(R^n) -> Sym_m, stored by images of sym_index(n)."""

    def __init__(self, n: int, images, labels=None):
        images = list(images)
        if len(images) != n * (n + 1) // 2:
            raise ValueError("need one image per symmetric basis element")
        m = images[0].rows if images else 0
        for M in images:
            if M.shape != (m, m) or not M.is_symmetric():
                raise ValueError("pencil images must be symmetric and of equal size")
        self.n, self.size, self.images = n, m, tuple(images)
        self.labels = labels

    def __call__(self, X: RatMatrix) -> RatMatrix:
        if X.shape != (self.n, self.n) or not X.is_symmetric():
            raise ValueError("argument must be a symmetric n×n matrix")
        out = [[ZERO] * self.size for _ in range(self.size)]
        for (i, j), M in zip(sym_index(self.n), self.images):
            x = X[i, j]
            if x:
                for r, row in enumerate(M._a):
                    o = out[r]
                    for c, y in enumerate(row):
                        if y:
                            o[c] += x * y
        return RatMatrix(out, self.size, self.size)

    def congruence(self, P: RatMatrix) -> "MatPencil":
        return MatPencil(self.n, [M.congruence(P) for M in self.images])

    def restrict_to_vars(self, A_list) -> list:
        """Coefficient matrices of x ↦ Φ(Σ x_i A_i)."""
        return [self(A) for A in A_list]


# ---------------------------------------------------------------------------
# the t-basis


@dataclass(frozen=True)
class TElem:
    I: tuple
    J1: tuple
    J2: tuple
    S: int  # rank of I∪J1 in subsets(n,d)
    T: int  # rank of I∪J2
    sign: int  # ς, the sign of u relative to E_ST + E_TS

    @property
    def diagonal(self) -> bool:
        return not self.J1

    @property
    def weight2(self):
        return ONE if not self.J1 else Q("1/2")


def _blocks_keys(n: int, d: int):
    keys = [((), ())]
    for k in range(1, d + 1):
        for J1 in combinations(range(n), k):
            rest = [j for j in range(n) if j not in J1 and j > J1[0]]
            for J2 in combinations(rest, k):
                keys.append((J1, J2))
    return keys


class TBasis:
    """The t/u-basis of Sym₂(∧^d R^n), grouped by blocks (J1,J2).

    J1 ≤ J2 in our order means min J1 < min J2 for nonempty
    disjoint sets. The (∅,∅) block (the copy of Ma_{d,n}) comes first,
    then blocks by |J1|, J1, J2; inside a block I runs in lex order.
    """

    def __init__(self, n: int, d: int):
        if not 0 <= d <= n:
            raise ValueError(f"need 0 <= d <= n, got n={n}, d={d}")
        self.n, self.d = n, d
        tab = subsets(n, d)
        self.N = len(tab)
        elems = []
        blocks = {}
        for J1, J2 in _blocks_keys(n, d):
            k = len(J1)
            if k > d or 2 * k > n:
                continue
            free = [i for i in range(n) if i not in J1 and i not in J2]
            idx = []
            for I in combinations(free, d - k):
                S = tuple(sorted(I + J1))
                T = tuple(sorted(I + J2))
                sg = 1 if not J1 else _ustate_sign(n, I, J1, J2)
                idx.append(len(elems))
                elems.append(TElem(I, J1, J2, tab.rank(S), tab.rank(T), sg))
            if idx:
                blocks[(J1, J2)] = tuple(idx)
        self.elems = tuple(elems)
        self.blocks = blocks
        self._pos = {(e.I, e.J1, e.J2): k for k, e in enumerate(elems)}
        assert len(elems) == self.N * (self.N + 1) // 2

    def __len__(self):
        return len(self.elems)

    def __getitem__(self, k) -> TElem:
        return self.elems[k]

    def index(self, I, J1=(), J2=()) -> int:
        return self._pos[(tuple(I), tuple(J1), tuple(J2))]

    def weight2(self) -> list:
        return [e.weight2 for e in self.elems]

    def element(self, k) -> RatMatrix:
        """u_k as an N×N symmetric matrix."""
        e = self.elems[k]
        F = [[ZERO] * self.N for _ in range(self.N)]
        F[e.S][e.T] = Q(e.sign)
        F[e.T][e.S] = Q(e.sign)
        return RatMatrix(F)

    def to_matrix(self, c) -> RatMatrix:
        F = [[ZERO] * self.N for _ in range(self.N)]
        for e, x in zip(self.elems, c):
            if x:
                F[e.S][e.T] += e.sign * x
                if e.S != e.T:
                    F[e.T][e.S] += e.sign * x
        return RatMatrix(F)

    def coords(self, F: RatMatrix) -> list:
        if not F.is_symmetric():
            raise ValueError("not symmetric")
        return [e.sign * F[e.S, e.T] for e in self.elems]

    def diagonal_indices(self) -> tuple:
        return self.blocks[((), ())]


def _raw_sign(n, d, i, S, T) -> int:
    """sign r with Δ_{E_ii}(E_ST + E_TS) = r·(E_S'T' + E_T'S')."""
    tab = subsets(n, d)
    ps = {c: s for _, c, s in psi_entries(n, d, i)}
    return ps[tab.rank(S)] * ps[tab.rank(T)]


@lru_cache(maxsize=None)
def _ustate_sign(n, I, J1, J2) -> int:
    if not I:
        return 1
    m = I[-1]
    d = len(I) + len(J1)
    S = tuple(sorted(I + J1))
    T = tuple(sorted(I + J2))
    return _raw_sign(n, d, m, S, T) * _ustate_sign(n, I[:-1], J1, J2)


@lru_cache(maxsize=None)
def t_basis(n: int, d: int) -> TBasis:
    return TBasis(n, d)


def t_block_split(n: int, d: int) -> dict:
    """{(J1, J2): indices into t_basis(n, d)}."""
    return dict(t_basis(n, d).blocks)


# ---------------------------------------------------------------------------
# Δ_A


def delta_apply(A: RatMatrix, F: RatMatrix, d: int) -> RatMatrix:
    """Δ_A(F) = Σ_ij A_ij Ψ_i F Ψ_jᵗ for F in Sym₂(∧^d R^n)."""
    n = A.rows
    N1 = binom(n, d - 1)
    out = [[ZERO] * N1 for _ in range(N1)]
    Fa = F._a
    for i in range(n):
        pi = psi_entries(n, d, i)
        for j in range(n):
            a = A[i, j]
            if not a:
                continue
            pj = psi_entries(n, d, j)
            for r1, c1, s1 in pi:
                Fr = Fa[c1]
                o = out[r1]
                for r2, c2, s2 in pj:
                    x = Fr[c2]
                    if x:
                        o[r2] += a * s1 * s2 * x
    return RatMatrix(out, N1, N1)


def delta_rank_one(v, F: RatMatrix, d: int) -> RatMatrix:
    """(ψ_v ⊗ ψ_v)(F) = Ψ_v F Ψ_vᵗ."""
    P = psi_matrix(v, d)
    return P @ F @ P.T


def _delta_probe_op(n: int, d: int, v) -> RatMatrix:
    src, dst = t_basis(n, d), t_basis(n, d - 1)
    cols = []
    for k in range(len(src)):
        cols.append(dst.coords(delta_rank_one(v, src.element(k), d)))
    return RatMatrix.from_columns(cols, rows=len(dst))


@lru_cache(maxsize=None)
def delta_images(n: int, d: int) -> tuple:
    """Matrices of Δ_X (u-coords, level d -> d-1) for X in sym_index(n)."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    unit = [[ONE if t == i else ZERO for t in range(n)] for i in range(n)]
    probes = {i: _delta_probe_op(n, d, unit[i]) for i in range(n)}
    out = []
    for i, j in sym_index(n):
        if i == j:
            out.append(probes[i])
        else:
            v = [ONE if t in (i, j) else ZERO for t in range(n)]
            out.append(_delta_probe_op(n, d, v) - probes[i] - probes[j])
    return tuple(out)


def delta_op(A: RatMatrix, d: int) -> RatMatrix:
    """Matrix of Δ_A: Sym₂(∧^d) -> Sym₂(∧^{d-1}) in u-coordinates."""
    if not A.is_symmetric():
        raise ValueError("Δ_A needs a symmetric A")
    n = A.rows
    imgs = delta_images(n, d)
    out = None
    for (i, j), M in zip(sym_index(n), imgs):
        a = A[i, j]
        if a:
            out = M.scale(a) if out is None else out + M.scale(a)
    if out is None:
        out = RatMatrix.zeros(len(t_basis(n, d - 1)), len(t_basis(n, d)))
    return out


def delta_op_t_entry(M: RatMatrix, n: int, d: int, r: int, c: int):
    """t-basis entry of a u-coordinate Δ matrix, as (q, e) meaning q·√2^e."""
    wr = t_basis(n, d - 1)[r].diagonal
    wc = t_basis(n, d)[c].diagonal
    e = (0 if wc else -1) - (0 if wr else -1)
    return M[r, c], e


# ---------------------------------------------------------------------------
# additive compounds and the forms b_X


def additive_compound(X: RatMatrix, d: int) -> RatMatrix:
    """L_d(X) on ∧^d R^n (lex basis e_S)."""
    n = X.rows
    if not X.is_square():
        raise ValueError("square matrix expected")
    tab = subsets(n, d)
    N = len(tab)
    L = [[ZERO] * N for _ in range(N)]
    for c, S in enumerate(tab):
        for pos, s in enumerate(S):
            for k in range(n):
                x = X[k, s]
                if not x:
                    continue
                if k == s:
                    L[c][c] += x
                    continue
                if k in S:
                    continue
                seq = list(S)
                seq[pos] = k
                sg = perm_sign(seq)
                L[tab.rank(seq)][c] += sg * x
    return RatMatrix(L, N, N)


@dataclass(frozen=True)
class TGram:
    """Gram matrix of a bilinear form on Sym₂(∧^d), u-coordinates, plus
    the squared weights needed to read it in the t-basis."""

    u: RatMatrix
    weight2: tuple

    def t_diagonal(self) -> list:
        return [self.u[k, k] * w for k, w in enumerate(self.weight2)]

    def t_block(self, idx) -> RatMatrix:
        """t-basis Gram restricted to indices sharing one weight class."""
        idx = list(idx)
        ws = {self.weight2[k] for k in idx}
        if len(ws) > 1:
            raise ValueError("mixed weight classes give irrational t entries")
        w = ws.pop() if ws else ONE
        return self.u.submatrix(idx, idx).scale(w)


def trace_form(A: RatMatrix, B: RatMatrix, L: RatMatrix | None = None):
    """tr(A·L·B) (L = identity if omitted)."""
    M = A if L is None else A @ L
    return sum((M[i, j] * B[j, i] for i in range(M.rows) for j in range(M.cols)
                if M[i, j] and B[j, i]), ZERO)


def bform(X: RatMatrix, d: int) -> TGram:
    """Gram of (F,G) ↦ tr(F·L_d(X)·G) on the u-basis of Sym₂(∧^d R^n)."""
    if not X.is_symmetric():
        raise ValueError("bform needs a symmetric X")
    n = X.rows
    tb = t_basis(n, d)
    L = additive_compound(X, d)._a
    sparse = []
    for e in tb.elems:
        ent = [(e.S, e.T, e.sign)]
        if e.S != e.T:
            ent.append((e.T, e.S, e.sign))
        sparse.append(ent)
    m = len(tb)
    G = [[ZERO] * m for _ in range(m)]
    for k in range(m):
        for l in range(k, m):
            s = ZERO
            # tr(u_k L u_l) = Σ u_k[a,b] L[b,c] u_l[c,a]
            for a, b, x in sparse[k]:
                for c, a2, y in sparse[l]:
                    if a2 == a:
                        v = L[b][c]
                        if v:
                            s += x * y * v
            G[k][l] = G[l][k] = s
    return TGram(RatMatrix(G, m, m), tuple(tb.weight2()))


# ---------------------------------------------------------------------------
# kernels W_{n-d,d} and the ρ maps


@lru_cache(maxsize=None)
def w_block_basis(n: int, d: int, J1=(), J2=()) -> RatMatrix:
    """Basis of W_{n-d,d}(J1,J2) in the block's own u-coordinates
    (rows follow t_basis(n,d).blocks[(J1,J2)])."""
    tb = t_basis(n, d)
    idx = tb.blocks[(tuple(J1), tuple(J2))]
    if d == 0:
        return RatMatrix.identity(len(idx))
    D = delta_images_identity(n, d)
    lower = t_basis(n, d - 1).blocks.get((tuple(J1), tuple(J2)))
    if lower is None:
        return RatMatrix.identity(len(idx))
    sub = D.submatrix(lower, idx)
    return kernel_basis(sub)


@lru_cache(maxsize=None)
def delta_images_identity(n: int, d: int) -> RatMatrix:
    return delta_op(RatMatrix.identity(n), d)


def w_kernel_basis(n: int, d: int) -> RatMatrix:
    """Basis of W_{n-d,d} = ker Δ_I in full u-coordinates, assembled
    block by block."""
    tb = t_basis(n, d)
    cols = []
    for key, idx in tb.blocks.items():
        K = w_block_basis(n, d, *key)
        for c in K.columns():
            v = [ZERO] * len(tb)
            for k, x in zip(idx, c):
                v[k] = x
            cols.append(v)
    return RatMatrix.from_columns(cols, rows=len(tb))


def rho_map(n: int, d: int, J1=(), J2=()) -> RatMatrix:
    """ρ_{d,n}: T_{J1,J2} -> Ma_{d,n} in t-coordinates of the block.

    t_{I,J1,J2} ↦ Π_l (x_{j_l} − x_{j'_l})·Π_{i∈I} x_i, pairing J1 and J2 in
    sorted order. (In u-coordinates the off-diagonal images carry an extra
    √2 common to the block; kernels are unaffected.)
    """
    tb = t_basis(n, d)
    J1, J2 = tuple(J1), tuple(J2)
    idx = tb.blocks[(J1, J2)]
    tab = subsets(n, d)
    cols = []
    for k in idx:
        e = tb[k]
        terms = {(): ONE}
        for a, b in zip(J1, J2):
            new = {}
            for m, c in terms.items():
                new[m + (a,)] = new.get(m + (a,), ZERO) + c
                new[m + (b,)] = new.get(m + (b,), ZERO) - c
            terms = new
        v = [ZERO] * len(tab)
        for m, c in terms.items():
            v[tab.rank(tuple(sorted(m + e.I)))] += c
        cols.append(v)
    return RatMatrix.from_columns(cols, rows=len(tab))


def wedge_power(X: RatMatrix, d: int) -> RatMatrix:
    """∧^d X on the lex basis e_S: entry (S,T) is det X[S,T]."""
    from .exactla import det
    tab = subsets(X.rows, d)
    if d == 0:
        return RatMatrix.identity(1)
    return RatMatrix([[det(X.submatrix(S, T)) for T in tab] for S in tab])
