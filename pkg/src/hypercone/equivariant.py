"""From an S_n-equivariant pencil φ: R^n -> Sym₂(V) (V short) to the
O(n)-equivariant pencil Φ: Sym₂(R^n) -> Sym₂(W).

V is given by components V_j ≅ V_{n-ε(j),ε(j)}, each realized by a basis
R_j of the S_n-stable subspace ker(D_e) ⊂ Ma_{ε(j),n}. Pencils on V are
written in the concatenated component bases. φ is a combination of
template maps, one per coefficient of the profile:

    a_kl:  α(λ)(f, g) = s(λ)·⟨f, g⟩,  s = Σλ for ε = 0, ε·Σλ/n otherwise
    b_kl:  β(λ)(f, g) = ⟨f, diag(ι_ε(λ − mean·e)) g⟩
    c_kl:  γ(λ)(f, g) = ⟨f, D_λ g⟩ for ε(l) = ε(k) + 1

Φ replaces each by its O(n) counterpart on W_j = ker Δ_I ⊂ Sym₂(∧^ε R^n):
(trY-part)·tr(FG), tr(F·L_ε(Y₀)·G) with Y₀ traceless, and tr(F·Δ_Y G).
W_j is spanned by the diagonal copy of R_j followed by the kernels of the
off-diagonal blocks T_{J1,J2}, so the first dim V_j coordinates of W_j
are V_j itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import polys
from .branden import SymPencil, compressed_pencil
from .combinat import binom, label, subsets
from .exactla import (ONE, ZERO, Q, RatMatrix, inverse, kernel_basis,
                      ldlt_psd_decompose, psd_check, psd_witness, rank, rref,
                      solve, vec)
from .exterior import (MatPencil, bform, delta_images, sym_basis_matrix,
                       sym_index, t_basis, w_block_basis, wedge_power)
from .multiaffine import (chain_decompose_ma, deriv_e_power, deriv_matrix,
                          permutation_action)


class NotEquivariantError(ValueError):
    pass


@dataclass(frozen=True)
class ShortComponent:
    eps: int
    R: RatMatrix  # columns: basis of V_{n-eps,eps} inside Ma_{eps,n}
    label: str = ""

    @property
    def dim(self) -> int:
        return self.R.cols


@dataclass(frozen=True)
class ShortRepSpec:
    n: int
    components: tuple

    def __post_init__(self):
        eps = [c.eps for c in self.components]
        if eps != sorted(eps):
            raise ValueError("components must be sorted by ε")
        for c in self.components:
            if not 0 <= 2 * c.eps <= self.n:
                raise ValueError(f"ε = {c.eps} is not short for n = {self.n}")
            if c.R.rows != binom(self.n, c.eps):
                raise ValueError("component basis lives in the wrong Ma space")
            if rank(c.R) != c.R.cols:
                raise ValueError("component basis is not independent")

    @property
    def dims(self) -> list:
        return [c.dim for c in self.components]

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> list:
        out, s = [], 0
        for d in self.dims:
            out.append(s)
            s += d
        return out

    def component_action(self, j: int, perm) -> RatMatrix:
        c = self.components[j]
        PR = permutation_action(self.n, c.eps, perm) @ c.R
        G = RatMatrix.from_columns([solve(c.R, col) for col in PR.columns()], rows=c.dim)
        if c.R @ G != PR:
            raise NotEquivariantError(f"component {j} is not S_n-stable")
        return G

    def action(self, perm) -> RatMatrix:
        return RatMatrix.block_diag([self.component_action(j, perm)
                                     for j in range(len(self.components))])


def spec_for_ma(n: int, d: int):
    """V = Ma_{d,n} with its chain decomposition.

    Returns (spec, P): P has the component bases of Ma_{d,n} as columns, in
    monomial coordinates, so a pencil B on Ma_{d,n} becomes PᵗBP on V.
    Component i is realized inside Ma_{i,n} as D_e^{d-i} of its basis.
    """
    dec = chain_decompose_ma(n, d)
    comps, cols = [], []
    for c in dec.components:
        R = deriv_e_power(n, d, d - c.i) @ c.basis
        comps.append(ShortComponent(c.i, R, f"V{n - c.i},{c.i}"))
        cols.append(c.basis)
    return ShortRepSpec(n, tuple(comps)), RatMatrix.hstack(cols, rows=binom(n, d))


# ---------------------------------------------------------------------------
# templates and profiles


def _template_keys(spec: ShortRepSpec) -> list:
    keys = []
    C = spec.components
    n = spec.n
    for k in range(len(C)):
        for l in range(k, len(C)):
            ek, el = C[k].eps, C[l].eps
            if ek == el:
                keys.append(("a", k, l))
                if ek >= 1 and 2 * ek < n:
                    keys.append(("b", k, l))
            elif el == ek + 1:
                keys.append(("c", k, l))
    return keys


def _iota_diag(lam, n: int, eps: int) -> RatMatrix:
    return RatMatrix.diag([sum((lam[i] for i in S), ZERO) for S in subsets(n, eps)])


def template_block(key, spec: ShortRepSpec, lam) -> RatMatrix:
    """The (k,l) block of a template map evaluated at λ."""
    kind, k, l = key
    n = spec.n
    lam = vec(lam)
    Rk, Rl = spec.components[k].R, spec.components[l].R
    eps = spec.components[k].eps
    tot = sum(lam, ZERO)
    if kind == "a":
        s = tot if eps == 0 else tot * eps / n
        return (Rk.T @ Rl).scale(s)
    if kind == "b":
        mean = tot / n
        return Rk.T @ _iota_diag([x - mean for x in lam], n, eps) @ Rl
    if kind == "c":
        return Rk.T @ deriv_matrix(lam, n, eps + 1) @ Rl
    raise KeyError(kind)


def template_matrix(key, spec: ShortRepSpec, lam) -> RatMatrix:
    """The full symmetric dim V × dim V matrix of one template at λ."""
    _, k, l = key
    B = template_block(key, spec, lam)
    off = spec.offsets
    m = spec.dim
    M = [[ZERO] * m for _ in range(m)]
    for r in range(B.rows):
        for c in range(B.cols):
            x = B[r, c]
            if x:
                M[off[k] + r][off[l] + c] += x
                if k != l:
                    M[off[l] + c][off[k] + r] += x
    return RatMatrix(M, m, m)


@dataclass
class CoefficientProfile:
    values: dict  # key (kind, k, l) -> Rational

    def __getitem__(self, key):
        return self.values.get(key, ZERO)

    def nonzero(self) -> dict:
        return {k: v for k, v in self.values.items() if v}

    def describe(self) -> list:
        names = {"a": "a", "b": "b", "c": "c"}
        return [f"{names[k]}_{i + 1}{j + 1} = {v}" for (k, i, j), v in sorted(self.values.items())]


def profile_pencil(profile: CoefficientProfile, spec: ShortRepSpec) -> SymPencil:
    """φ rebuilt from its profile, on the component bases of V."""
    n = spec.n
    coeffs = []
    for i in range(n):
        delta = [ONE if t == i else ZERO for t in range(n)]
        M = RatMatrix.zeros(spec.dim, spec.dim)
        for key, v in profile.nonzero().items():
            M = M + template_matrix(key, spec, delta).scale(v)
        coeffs.append(M)
    return SymPencil(coeffs)


def check_equivariant(phi: SymPencil, spec: ShortRepSpec) -> None:
    """P_τᵗ φ(x) P_τ = φ(τx) for the transpositions (i, i+1)."""
    n = spec.n
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        G = spec.action(perm)
        for j in range(n):
            if phi.coeffs[j].congruence(G) != phi.coeffs[perm[j]]:
                raise NotEquivariantError(f"φ is not invariant under the transposition ({i + 1} {i + 2})")


def extract_profile(phi: SymPencil, spec: ShortRepSpec) -> CoefficientProfile:
    if phi.size != spec.dim or phi.n != spec.n:
        raise ValueError("pencil does not match the representation")
    check_equivariant(phi, spec)
    keys = _template_keys(spec)
    n, m = spec.n, spec.dim
    rows, rhs = [], []
    tmats = []
    for i in range(n):
        delta = [ONE if t == i else ZERO for t in range(n)]
        tmats.append([template_matrix(key, spec, delta) for key in keys])
    for i in range(n):
        for r in range(m):
            for c in range(r, m):
                rows.append([T[r, c] for T in tmats[i]])
                rhs.append(phi.coeffs[i][r, c])
    keys_used = [k for j, k in enumerate(keys) if any(row[j] for row in rows)]
    cols = [j for j, k in enumerate(keys) if k in keys_used]
    A = RatMatrix([[row[j] for j in cols] for row in rows], len(rows), len(cols))
    try:
        x = solve(A, rhs, unique=True)
    except ValueError as e:
        raise ValueError(f"φ is not a combination of the α/β/γ templates: {e}") from None
    prof = CoefficientProfile({k: v for k, v in zip(keys_used, x)})
    if profile_pencil(prof, spec) != phi:
        raise AssertionError("profile does not reconstruct φ")
    return prof


# ---------------------------------------------------------------------------
# the O(n) side


def _weights_h(n: int, eps: int) -> list:
    """tr(u_k u_k): 1 on the diagonal, 2 off it."""
    return [ONE if e.diagonal else Q(2) for e in t_basis(n, eps).elems]


def w_component_basis(n: int, eps: int, R: RatMatrix):
    """Basis of W_{n-ε,ε} in full u-coordinates: the diagonal copy of R,
    then the kernels of the off-diagonal blocks. Returns (matrix, labels)."""
    tb = t_basis(n, eps)
    cols, labels = [], []
    diag = tb.diagonal_indices()
    for c in range(R.cols):
        v = [ZERO] * len(tb)
        for k, x in zip(diag, R.col(c)):
            v[k] = x
        cols.append(v)
        labels.append(f"V{n - eps},{eps}[{c + 1}]")
    for key, idx in tb.blocks.items():
        if key == ((), ()):
            continue
        K = w_block_basis(n, eps, *key)
        for c in range(K.cols):
            v = [ZERO] * len(tb)
            for k, x in zip(idx, K.col(c)):
                v[k] = x
            cols.append(v)
            labels.append(f"W{n - eps},{eps}({label(key[0])}|{label(key[1])})[{c + 1}]")
    if not cols:
        return RatMatrix.zeros(len(tb), 0), labels
    return RatMatrix.from_columns(cols, rows=len(tb)), labels


@dataclass
class EquivariantPencil:
    """Φ together with the data describing W."""

    pencil: MatPencil
    spec: ShortRepSpec
    wbases: list  # per component, u-coordinates in Sym₂(∧^ε)
    labels: list
    profile: Optional[CoefficientProfile] = None
    compressed: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def size(self) -> int:
        return self.pencil.size

    @property
    def wdims(self) -> list:
        return [B.cols for B in self.wbases]

    @property
    def woffsets(self) -> list:
        out, s = [], 0
        for d in self.wdims:
            out.append(s)
            s += d
        return out

    def __call__(self, X: RatMatrix) -> RatMatrix:
        return self.pencil(X)

    def v_indices(self) -> list:
        out = []
        for off, c in zip(self.woffsets, self.spec.components):
            out.extend(range(off, off + c.dim))
        return out

    def block_ranges(self) -> list:
        return [(c.eps, off, off + d) for c, off, d in
                zip(self.spec.components, self.woffsets, self.wdims)]

    def restricted_to_v(self, X: RatMatrix) -> RatMatrix:
        idx = self.v_indices()
        return self(X).submatrix(idx, idx)


def _bform_cache(n, eps):
    key = (n, eps)
    if key not in _BF:
        _BF[key] = [bform(sym_basis_matrix(n, v), eps).u for v in range(n * (n + 1) // 2)]
    return _BF[key]


_BF: dict = {}


def assemble_phi(profile: CoefficientProfile, spec: ShortRepSpec) -> EquivariantPencil:
    n = spec.n
    C = spec.components
    bases, labels = [], []
    for c in C:
        B, lab = w_component_basis(n, c.eps, c.R)
        bases.append(B)
        labels.extend(lab)
    dims = [B.cols for B in bases]
    offs = [sum(dims[:j]) for j in range(len(dims))]
    m = sum(dims)
    H = {c.eps: RatMatrix.diag(_weights_h(n, c.eps)) for c in C}
    HW = [H[c.eps] @ B for c, B in zip(C, bases)]
    nsym = n * (n + 1) // 2
    traces = [ONE if i == j else ZERO for i, j in sym_index(n)]
    images = [[[ZERO] * m for _ in range(m)] for _ in range(nsym)]

    def place(v, k, l, blk):
        img = images[v]
        for r in range(blk.rows):
            row = blk._a[r]
            for c2 in range(blk.cols):
                x = row[c2]
                if x:
                    img[offs[k] + r][offs[l] + c2] += x
                    if k != l:
                        img[offs[l] + c2][offs[k] + r] += x

    for key, coef in profile.nonzero().items():
        kind, k, l = key
        eps = C[k].eps
        if kind == "a":
            G0 = bases[k].T @ HW[l]
            for v in range(nsym):
                if traces[v]:
                    s = traces[v] if eps == 0 else traces[v] * eps / n
                    place(v, k, l, G0.scale(coef * s))
        elif kind == "b":
            G0 = bases[k].T @ HW[l]
            BF = _bform_cache(n, eps)
            for v in range(nsym):
                blk = bases[k].T @ BF[v] @ bases[l]
                if traces[v]:
                    blk = blk - G0.scale(traces[v] * eps / n)
                place(v, k, l, blk.scale(coef))
        elif kind == "c":
            D = delta_images(n, C[l].eps)
            for v in range(nsym):
                place(v, k, l, (HW[k].T @ D[v] @ bases[l]).scale(coef))
    mats = [RatMatrix(img, m, m) for img in images]
    return EquivariantPencil(MatPencil(n, mats, labels), spec, bases, labels, profile)


# ---------------------------------------------------------------------------
# Cayley samples and the PSD-equivalence check


def cayley_orthogonal(S: RatMatrix) -> RatMatrix:
    """(I − S)(I + S)^{-1} for skew-symmetric S: a rational orthogonal matrix."""
    n = S.rows
    I = RatMatrix.identity(n)
    return (I - S) @ inverse(I + S)


def random_skew(n: int, rng: random.Random, bound: int = 2) -> RatMatrix:
    a = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Q(rng.randint(-bound, bound)) / rng.randint(1, 3)
            a[i][j], a[j][i] = x, -x
    return RatMatrix(a, n, n)


def random_orthogonal(n: int, rng: random.Random) -> RatMatrix:
    return cayley_orthogonal(random_skew(n, rng))


@dataclass
class EquivalenceReport:
    samples: int
    agreements: int
    disagreements: list  # (X, λ, Φ-psd, φ-psd, witness)
    psd_count: int

    @property
    def ok(self) -> bool:
        return not self.disagreements


def psd_equivalence_check(phi: SymPencil, Phi, samples) -> EquivalenceReport:
    """samples: iterable of (Q, λ) with Q orthogonal; X = Q·diag(λ)·Qᵗ."""
    bad = []
    agree = npsd = 0
    total = 0
    for Qm, lam in samples:
        total += 1
        lam = vec(lam)
        X = Qm @ RatMatrix.diag(lam) @ Qm.T
        a = psd_check(Phi(X))
        b = psd_check(phi(lam))
        npsd += b
        if a == b:
            agree += 1
        else:
            w = psd_witness(Phi(X)) if not a else psd_witness(phi(lam))
            bad.append((X, lam, a, b, w))
    return EquivalenceReport(total, agree, bad, npsd)


def cayley_samples(n: int, count: int, seed: int = 0, low: int = -3, high: int = 6):
    rng = random.Random(seed)
    for _ in range(count):
        lam = [Q(rng.randint(low, high)) / rng.randint(1, 2) for _ in range(n)]
        yield random_orthogonal(n, rng), lam


# ---------------------------------------------------------------------------
# O(n) action on W (for equivariance spot checks)


def _sym_matrix_of(n: int, eps: int, u) -> RatMatrix:
    return t_basis(n, eps).to_matrix(u)


def w_action(EP: EquivariantPencil, Qm: RatMatrix) -> RatMatrix:
    """Matrix of F ↦ (∧^ε Q) F (∧^ε Q)ᵗ on the W coordinates."""
    n = EP.n
    blocks = []
    for c, B in zip(EP.spec.components, EP.wbases):
        tb = t_basis(n, c.eps)
        Cq = wedge_power(Qm, c.eps)
        cols = []
        for col in B.columns():
            F = tb.to_matrix(col)
            cols.append(solve(B, tb.coords(Cq @ F @ Cq.T)))
        blocks.append(RatMatrix.from_columns(cols, rows=B.cols))
    return RatMatrix.block_diag(blocks)


# ---------------------------------------------------------------------------
# compression by minors


def _u_minor_polys(n: int, eps: int) -> list:
    """f_u(X) = tr(u·∧^ε X) for the u-basis of Sym₂(∧^ε)."""
    tb = t_basis(n, eps)
    tab = subsets(n, eps)
    out = []
    for e in tb.elems:
        S, T = tab[e.S], tab[e.T]
        p = polys.minor(n, S, T) if eps else polys.const(1)
        out.append(polys.scale(p, e.sign if e.diagonal else 2 * e.sign))
    return out


def minor_map_kernel(n: int, eps: int) -> RatMatrix:
    """Kernel of A ↦ f_A on Sym₂(∧^ε), u-coordinates.

    Monomials of det X[S,T] all have row/column index multiset S ⊎ T, so
    the coefficient matrix splits into blocks by that multiset.
    """
    tb = t_basis(n, eps)
    fs = _u_minor_polys(n, eps)
    tab = subsets(n, eps)
    groups: dict = {}
    for k, e in enumerate(tb.elems):
        key = tuple(sorted(tab[e.S] + tab[e.T]))
        groups.setdefault(key, []).append(k)
    cols = []
    for idx in groups.values():
        mons = sorted({m for k in idx for m in fs[k]})
        pos = {m: r for r, m in enumerate(mons)}
        M = [[ZERO] * len(idx) for _ in mons]
        for c, k in enumerate(idx):
            for m, x in fs[k].items():
                M[pos[m]][c] = x
        K = kernel_basis(RatMatrix(M, len(mons), len(idx)))
        for col in K.columns():
            v = [ZERO] * len(tb)
            for k, x in zip(idx, col):
                v[k] = x
            cols.append(v)
    if not cols:
        return RatMatrix.zeros(len(tb), 0)
    return RatMatrix.from_columns(cols, rows=len(tb))


def minor_rank(n: int, d: int) -> int:
    """dim of the span of all d×d minors, by exact rank."""
    return len(t_basis(n, d)) - minor_map_kernel(n, d).cols


def min_dim(d: int, n: int) -> int:
    """Π_{i=1}^{d} (n+1−i)(n+2−i) / ((d+1−i)(d+2−i))."""
    num = den = 1
    for i in range(1, d + 1):
        num *= (n + 1 - i) * (n + 2 - i)
        den *= (d + 1 - i) * (d + 2 - i)
    assert num % den == 0
    return num // den


def _extend_basis(first: int, C: RatMatrix) -> RatMatrix:
    """Basis of span(e_1..e_first, C) starting with e_1..e_first."""
    m = C.rows
    E = [[ONE if i == j else ZERO for i in range(m)] for j in range(first)]
    M = RatMatrix.hstack([RatMatrix.from_columns(E, rows=m) if E else RatMatrix.zeros(m, 0), C], rows=m)
    _, piv = rref(M)
    assert piv[:first] == list(range(first))
    return M.submatrix(range(m), piv)


def minors_compress(EP: EquivariantPencil) -> EquivariantPencil:
    """Restrict each W_j to W_j ∩ (ker of A ↦ f_A)^⊥."""
    n = EP.n
    newb, Ps, labels = [], [], []
    off = 0
    for c, B in zip(EP.spec.components, EP.wbases):
        H = RatMatrix.diag(_weights_h(n, c.eps))
        K = minor_map_kernel(n, c.eps)
        if K.cols:
            Cw = kernel_basis(K.T @ H @ B)
        else:
            Cw = RatMatrix.identity(B.cols)
        Cw = _extend_basis(c.dim, Cw)
        assert Cw.cols == Cw.rows or K.cols
        newb.append(B @ Cw)
        Ps.append(Cw)
        lab = EP.labels[off:off + B.cols]
        for j in range(Cw.cols):
            col = Cw.col(j)
            nz = [i for i, x in enumerate(col) if x]
            labels.append(lab[nz[0]] if len(nz) == 1 else f"W~{n - c.eps},{c.eps}[{j + 1}]")
        off += B.cols
    P = RatMatrix.block_diag(Ps)
    pen = EP.pencil.congruence(P)
    pen.labels = labels
    return EquivariantPencil(pen, EP.spec, newb, labels, EP.profile, True, dict(EP.meta))


# ---------------------------------------------------------------------------
# derivative cones of the PSD cone


def sigma_phi(n: int, d: int):
    """(spec, φ) for B̃ of σ_{d,n} written on the chain bases of Ma_{d-1,n}."""
    spec, P = spec_for_ma(n, d - 1)
    B = compressed_pencil(n, d)
    return spec, B.congruence(P)


def derivative_cone_pencil(n: int, k: int, compress: bool = True) -> EquivariantPencil:
    """Pencil for {X : λ(X) in the cone of σ_{n-k,n}}, the hyperbolicity
    cone of the k-th Renegar derivative of det in direction I."""
    if not 0 <= k <= n - 1:
        raise ValueError("need 0 <= k <= n-1")
    return sigma_matrix_pencil(n, n - k, compress)


def sigma_matrix_pencil(n: int, d: int, compress: bool = True) -> EquivariantPencil:
    """Pencil whose PSD set is {X : λ(X) in the cone of σ_{d,n}}."""
    spec, phi = sigma_phi(n, d)
    prof = extract_profile(phi, spec)
    EP = assemble_phi(prof, spec)
    EP.meta.update({"n": n, "d": d})
    return minors_compress(EP) if compress else EP


def restrict_pencil(Phi, A_list, inexact: bool = False, tol: float = 1e-9) -> SymPencil:
    """x ↦ Φ(Σ x_i A_i). Requires Σ A_i = I.

    With inexact=True, a pencil with A(e) positive definite but not I is
    first normalized by L^{-1}(·)L^{-t} from A(e) = LDLᵗ; the square roots
    of D are rounded to rationals, so the result is only approximately
    normalized (checked against tol).
    """
    A_list = list(A_list)
    n = A_list[0].rows
    S = RatMatrix.zeros(n, n)
    for A in A_list:
        S = S + A
    I = RatMatrix.identity(n)
    if S != I:
        if not inexact:
            raise ValueError("restrict_pencil needs A(e) = I")
        A_list = _normalize_inexact(A_list, S, tol)
    return SymPencil([Phi(A) for A in A_list])


def _normalize_inexact(A_list, S, tol):
    import gmpy2
    f = ldlt_psd_decompose(S)
    if any(x <= 0 for x in f.D):
        raise ValueError("A(e) is not positive definite")
    n = S.rows
    with gmpy2.context(gmpy2.get_context(), precision=200):
        r = [Q(gmpy2.mpq(gmpy2.rec_sqrt(gmpy2.mpfr(x)))) for x in f.D]
    # Pᵗ S P = L D Lᵗ, so T = P·L^{-t}·D^{-1/2} gives TᵗST ≈ I
    T = f.P @ inverse(f.L).T @ RatMatrix.diag(r)
    out = [A.congruence(T) for A in A_list]
    tot = RatMatrix.zeros(n, n)
    for A in out:
        tot = tot + A
    err = max(abs(float(x)) for x in (tot - RatMatrix.identity(n)).entries())
    if err > tol:
        raise ValueError(f"normalization error {err} exceeds tolerance")
    return out


# ---------------------------------------------------------------------------
# α, β, γ on explicit bases, invariant forms


@dataclass(frozen=True)
class BasisMaps:
    """α/β data for V_{n-i,i} realized by the columns of R ⊂ Ma_{i,n}.

    G(a) = Rᵗ·diag(ι_i(a))·R is the form (f, g) ↦ ⟨f, diag(a) g⟩; α is its
    restriction to multiples of e and β the restriction to e^⊥.
    """

    n: int
    i: int
    R: RatMatrix

    @property
    def gram(self) -> RatMatrix:
        return self.R.T @ self.R

    def G(self, a) -> RatMatrix:
        return self.R.T @ _iota_diag(vec(a), self.n, self.i) @ self.R

    def alpha(self, a) -> RatMatrix:
        a = vec(a)
        mean = sum(a, ZERO) / self.n
        return self.G([mean] * self.n)

    def beta(self, a) -> RatMatrix:
        a = vec(a)
        mean = sum(a, ZERO) / self.n
        return self.G([x - mean for x in a])


def _default_R(n: int, i: int) -> RatMatrix:
    spec, _ = spec_for_ma(n, i)
    return spec.components[-1].R if spec.components[-1].eps == i else None


def basis_maps(n: int, i: int, R: Optional[RatMatrix] = None) -> BasisMaps:
    if not 0 <= 2 * i <= n:
        raise ValueError(f"V_{{{n - i},{i}}} is not short")
    if R is None:
        R = _default_R(n, i)
    return BasisMaps(n, i, R)


def gamma_map(n: int, i: int, Rk: Optional[RatMatrix] = None, Rl: Optional[RatMatrix] = None):
    """a ↦ Gram of (f, g) ↦ ⟨f, D_a g⟩ on V_{n-i,i} × V_{n-i-1,i+1}."""
    if i < 0 or 2 * (i + 1) > n:
        raise ValueError("γ needs 0 <= 2i <= n-2")
    Rk = _default_R(n, i) if Rk is None else Rk
    Rl = _default_R(n, i + 1) if Rl is None else Rl

    def g(a) -> RatMatrix:
        return Rk.T @ deriv_matrix(vec(a), n, i + 1) @ Rl
    return g


def invariant_forms(n: int, i: int, R: RatMatrix) -> list:
    """Basis of the S_n-invariant symmetric bilinear forms on span R, each
    scaled to a primitive integer matrix."""
    comp = ShortComponent(i, R)
    spec = ShortRepSpec(n, (comp,))
    m = R.cols
    pairs = [(r, c) for r in range(m) for c in range(r, m)]

    def sym(v):
        M = [[ZERO] * m for _ in range(m)]
        for (r, c), x in zip(pairs, v):
            M[r][c] = M[c][r] = x
        return RatMatrix(M, m, m)

    rows = []
    for k in range(n - 1):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        G = spec.component_action(0, perm)
        cols = []
        for p in range(len(pairs)):
            e = [ONE if q == p else ZERO for q in range(len(pairs))]
            F = sym(e)
            D = F.congruence(G) - F
            cols.append([D[r, c] for r, c in pairs])
        rows.append(RatMatrix.from_columns(cols, rows=len(pairs)))
    K = kernel_basis(RatMatrix.vstack(rows))
    return [_primitive(sym(col)) for col in K.columns()]


def _primitive(M: RatMatrix) -> RatMatrix:
    from math import gcd, lcm
    ents = [x for x in M.entries() if x]
    if not ents:
        return M
    L = 1
    for x in ents:
        L = lcm(L, int(x.denominator))
    g = 0
    for x in ents:
        g = gcd(g, int(x * L))
    s = Q(L) / g
    first = next(x for x in M.entries() if x)
    return M.scale(s if first > 0 else -s)


# ---------------------------------------------------------------------------
# worked examples


def _lin(n: int, terms: dict) -> list:
    v = [ZERO] * n
    for i, c in terms.items():
        v[i] = Q(c)
    return v


def _prod_ma(n: int, *factors) -> list:
    """Coefficients in Ma_{k,n} of a product of linear forms in disjoint-ish
    variables (square terms dropped, as they cancel in the cases used)."""
    terms = {(): ONE}
    for f in factors:
        new: dict = {}
        for S, c in terms.items():
            for i, a in enumerate(f):
                if a and i not in S:
                    key = tuple(sorted(S + (i,)))
                    new[key] = new.get(key, ZERO) + c * a
        terms = new
    k = len(factors)
    tab = subsets(n, k)
    v = [ZERO] * len(tab)
    for S, c in terms.items():
        v[tab.rank(S)] += c
    return v


def reference_std_basis(n: int) -> RatMatrix:
    """x_1 − x_2, …, x_1 − x_n in Ma_{1,n}."""
    return RatMatrix.from_columns([_lin(n, {0: 1, j: -1}) for j in range(1, n)], rows=n)


def n3_example(lams=(1, 1, 1, 1)):
    """(spec, φ) for V = R^3 = V_3 ⊕ V_{2,1} with the explicit matrices
    M_1..M_4 of the worked example, combined with weights λ_1..λ_4."""
    l1, l2, l3, l4 = (Q(x) for x in lams)
    n = 3
    R0 = RatMatrix([[1]])
    R1 = reference_std_basis(3)
    spec = ShortRepSpec(n, (ShortComponent(0, R0, "V3"), ShortComponent(1, R1, "V2,1")))
    coeffs = []
    for i in range(n):
        a = [ONE if t == i else ZERO for t in range(n)]
        A = sum(a, ZERO)
        M1 = [[A]]
        M2 = [a[0] - a[1], a[0] - a[2]]
        M3 = [[2 * A, A], [A, 2 * A]]
        M4 = [[a[0] + a[1], a[0]], [a[0], a[0] + a[2]]]
        rows = [[l1 * M1[0][0], l2 * M2[0], l2 * M2[1]]]
        for r in range(2):
            rows.append([l2 * M2[r]] + [l3 * M3[r][c] + l4 * M4[r][c] for c in range(2)])
        coeffs.append(RatMatrix(rows))
    return spec, SymPencil(coeffs, ["V3", "x1-x2", "x1-x3"])


def n3_reference_w_basis() -> RatMatrix:
    """Basis (1; E11−E22, E11−E33, E12+E21, E13+E31, E23+E32) of W_3 ⊕ W_{2,1},
    as columns in the concatenated u-coordinates of Sym₂(∧^0) ⊕ Sym₂(∧^1)."""
    tb = t_basis(3, 1)
    mats = []
    for (i, j, c) in [(0, 1, -1), (0, 2, -1)]:
        X = [[ZERO] * 3 for _ in range(3)]
        X[i][i], X[j][j] = ONE, Q(c)
        mats.append(RatMatrix(X))
    for (i, j) in [(0, 1), (0, 2), (1, 2)]:
        X = [[ZERO] * 3 for _ in range(3)]
        X[i][j] = X[j][i] = ONE
        mats.append(RatMatrix(X))
    cols = [[ONE] + [ZERO] * len(tb)]
    for X in mats:
        cols.append([ZERO] + tb.coords(X))
    return RatMatrix.from_columns(cols, rows=1 + len(tb))


def in_reference_basis(EP: EquivariantPencil, B: RatMatrix) -> MatPencil:
    """Rewrite Φ in another basis B of W, given in concatenated u-coordinates."""
    W = RatMatrix.block_diag(EP.wbases)
    C = RatMatrix.from_columns([solve(W, col) for col in B.columns()], rows=W.cols)
    return EP.pencil.congruence(C)


def v22_reference_basis() -> RatMatrix:
    """(x1−x4)(x2−x3), (x1−x3)(x2−x4) in Ma_{2,4}."""
    return RatMatrix.from_columns([
        _prod_ma(4, _lin(4, {0: 1, 3: -1}), _lin(4, {1: 1, 2: -1})),
        _prod_ma(4, _lin(4, {0: 1, 2: -1}), _lin(4, {1: 1, 3: -1})),
    ], rows=6)


def ma24_example(lams=(1, 1, 1, 1, 0, 0)):
    """(spec, φ) for V = Ma_{2,4} = V_4 ⊕ V_{3,1} ⊕ V_{2,2} built from the
    six explicit matrices M_1..M_6 with weights λ_1..λ_6."""
    l1, l2, l3, l4, l5, l6 = (Q(x) for x in lams)
    n = 4
    R0, R1, R2 = RatMatrix([[1]]), reference_std_basis(4), v22_reference_basis()
    spec = ShortRepSpec(n, (ShortComponent(0, R0, "V4"), ShortComponent(1, R1, "V3,1"),
                            ShortComponent(2, R2, "V2,2")))
    bm = BasisMaps(4, 1, R1)
    Ge = bm.G([ONE] * 4)
    coeffs = []
    for i in range(n):
        a = [ONE if t == i else ZERO for t in range(n)]
        A = sum(a, ZERO)
        M1 = RatMatrix([[A]])
        M2 = RatMatrix([[a[0] - a[1], a[0] - a[2], a[0] - a[3]]])
        M3 = bm.G(a)
        M4 = Ge.scale(A)
        M5 = RatMatrix([[2, 1], [1, 2]]).scale(A)
        M6 = R1.T @ deriv_matrix(a, 4, 2) @ R2
        blk = [[M1.scale(l1), M2.scale(l2), RatMatrix.zeros(1, 2)],
               [M2.T.scale(l2), M3.scale(l3) + M4.scale(l4), M6.scale(l6)],
               [RatMatrix.zeros(2, 1), M6.T.scale(l6), M5.scale(l5)]]
        coeffs.append(RatMatrix.vstack([RatMatrix.hstack(r, rows=r[0].rows) for r in blk]))
    return spec, SymPencil(coeffs)
