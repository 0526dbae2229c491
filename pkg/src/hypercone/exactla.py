"""Exact rational linear algebra and univariate polynomials.

Scalars are ``gmpy2.mpq`` values (always reduced, positive denominator).
They compare equal to ``int`` and ``fractions.Fraction`` and hash the same
way, so callers may pass any of those in.

Matrices are small dense row-major objects. Nothing here mutates a matrix
after it has been returned to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))
ZERO = mpq(0)
ONE = mpq(1)


class NotPSDError(ValueError):
    """Raised when a matrix that must be PSD is not. Carries a witness."""

    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


def Q(x) -> Rational:
    """Coerce int / str ("p/q") / Fraction / mpq to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        try:
            return mpq(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact code paths")
    try:
        return mpq(x)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot convert {type(x).__name__} to a rational") from exc


def qstr(x) -> str:
    """'p/q' or 'p' string of a rational."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_fraction(x) -> Fraction:
    x = Q(x)
    return Fraction(int(x.numerator), int(x.denominator))


def vec(xs: Iterable) -> list:
    return [Q(x) for x in xs]


def dot(u: Sequence, v: Sequence) -> Rational:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


# ---------------------------------------------------------------------------
# matrices


class RatMatrix:
    """Dense exact rational matrix."""

    __slots__ = ("rows", "cols", "_a")

    def __init__(self, data, rows: int | None = None, cols: int | None = None):
        if rows is not None:
            # fast path: data is a list of lists already holding mpq values
            self.rows, self.cols, self._a = rows, cols, data
            return
        a = [[Q(x) for x in r] for r in data]
        self.rows = len(a)
        self.cols = len(a[0]) if a else 0
        for r in a:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
        self._a = a

    @classmethod
    def _wrap(cls, a, rows, cols):
        return cls(a, rows, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        a = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = ONE
        return cls._wrap(a, n, n)

    @classmethod
    def diag(cls, xs) -> "RatMatrix":
        xs = vec(xs)
        n = len(xs)
        a = [[ZERO] * n for _ in range(n)]
        for i, x in enumerate(xs):
            a[i][i] = x
        return cls._wrap(a, n, n)

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "RatMatrix":
        columns = [vec(c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0)
        m = len(columns[0])
        return cls._wrap([[c[i] for c in columns] for i in range(m)], m, len(columns))

    @classmethod
    def hstack(cls, mats: Sequence["RatMatrix"], rows: int | None = None) -> "RatMatrix":
        mats = list(mats)
        if not mats:
            return cls.zeros(rows or 0, 0)
        r = mats[0].rows
        a = [sum((m._a[i] for m in mats), []) for i in range(r)]
        return cls._wrap([list(x) for x in a], r, sum(m.cols for m in mats))

    @classmethod
    def vstack(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        mats = list(mats)
        c = mats[0].cols
        a = [list(row) for m in mats for row in m._a]
        return cls._wrap(a, len(a), c)

    @classmethod
    def block_diag(cls, mats: Sequence["RatMatrix"]) -> "RatMatrix":
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        out = [[ZERO] * C for _ in range(R)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                out[r0 + i][c0:c0 + m.cols] = m._a[i]
            r0 += m.rows
            c0 += m.cols
        return cls._wrap(out, R, C)

    # -- access
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._a[i][j]

    def row(self, i) -> list:
        return list(self._a[i])

    def col(self, j) -> list:
        return [r[j] for r in self._a]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list:
        return [list(r) for r in self._a]

    def entries(self) -> list:
        """Row-major flat list."""
        return [x for r in self._a for x in r]

    def submatrix(self, rows, cols) -> "RatMatrix":
        rows, cols = list(rows), list(cols)
        return RatMatrix._wrap([[self._a[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def diagonal(self) -> list:
        return [self._a[i][i] for i in range(min(self.rows, self.cols))]

    # -- arithmetic
    @property
    def T(self) -> "RatMatrix":
        if not self.rows:
            return RatMatrix.zeros(self.cols, 0)
        return RatMatrix._wrap([list(c) for c in zip(*self._a)], self.cols, self.rows)

    def transpose(self) -> "RatMatrix":
        return self.T

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same(other)
        return RatMatrix._wrap([[x + y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)],
                               self.rows, self.cols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same(other)
        return RatMatrix._wrap([[x - y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)],
                               self.rows, self.cols)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._wrap([[-x for x in r] for r in self._a], self.rows, self.cols)

    def scale(self, c) -> "RatMatrix":
        c = Q(c)
        return RatMatrix._wrap([[c * x for x in r] for r in self._a], self.rows, self.cols)

    def __mul__(self, c) -> "RatMatrix":
        if isinstance(c, RatMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            B = other._a
            m = other.cols
            out = []
            for r in self._a:
                acc = [ZERO] * m
                for k, x in enumerate(r):
                    if x:
                        bk = B[k]
                        for j in range(m):
                            y = bk[j]
                            if y:
                                acc[j] += x * y
                out.append(acc)
            return RatMatrix._wrap(out, self.rows, m)
        v = list(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [dot(r, v) for r in self._a]

    def _same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._a == other._a

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self._a))))

    def __repr__(self):
        body = "; ".join(" ".join(qstr(x) for x in r) for r in self._a)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return all(not x for r in self._a for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        a = self._a
        return all(a[i][j] == a[j][i] for i in range(self.rows) for j in range(i))

    def trace(self) -> Rational:
        return sum(self.diagonal(), ZERO)

    def congruence(self, P: "RatMatrix") -> "RatMatrix":
        """Pᵗ·self·P."""
        return P.T @ (self @ P)

    # -- elimination based
    def rref(self):
        return rref(self)

    def rank(self) -> int:
        return rank(self)

    def det(self) -> Rational:
        return det(self)

    def inverse(self) -> "RatMatrix":
        return inverse(self)


def as_matrix(M) -> RatMatrix:
    return M if isinstance(M, RatMatrix) else RatMatrix(M)


def rref(M: RatMatrix):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    a = [list(r) for r in M._a]
    rows, cols = M.rows, M.cols
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        pr = [x * inv for x in a[r]]
        a[r] = pr
        nz = [j for j in range(c, cols) if pr[j]]
        for i in range(rows):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    for j in nz:
                        ai[j] -= f * pr[j]
        piv.append(c)
        r += 1
    return RatMatrix._wrap(a, rows, cols), piv


def rank(M: RatMatrix) -> int:
    if M.rows > M.cols:
        M = M.T
    return len(rref(M)[1])


def kernel_basis(M: RatMatrix) -> RatMatrix:
    """Columns spanning the right kernel of M (cols(M) × nullity)."""
    R, piv = rref(M)
    n = M.cols
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    out = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -R._a[i][f]
        out.append(v)
    if not out:
        return RatMatrix.zeros(n, 0)
    return RatMatrix.from_columns(out)


def column_space(M: RatMatrix) -> RatMatrix:
    """Independent columns of M spanning its column space (pivot columns)."""
    _, piv = rref(M)
    return M.submatrix(range(M.rows), piv) if piv else RatMatrix.zeros(M.rows, 0)


def solve(A: RatMatrix, b: Sequence, unique: bool = True) -> list:
    """Exact solution of A x = b. Raises ValueError if inconsistent, or
    (when unique=True) if the solution is not unique."""
    b = vec(b)
    if len(b) != A.rows:
        raise ValueError("right-hand side has wrong length")
    aug = RatMatrix._wrap([list(r) + [bi] for r, bi in zip(A._a, b)], A.rows, A.cols + 1)
    R, piv = rref(aug)
    if piv and piv[-1] == A.cols:
        raise ValueError("inconsistent linear system")
    if unique and len(piv) < A.cols:
        raise ValueError("linear system has no unique solution")
    x = [ZERO] * A.cols
    for i, p in enumerate(piv):
        x[p] = R._a[i][A.cols]
    return x


def det(M: RatMatrix) -> Rational:
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in M._a]
    n = M.rows
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        inv = 1 / piv
        rc = a[c]
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f *= inv
                ai = a[i]
                for j in range(c + 1, n):
                    if rc[j]:
                        ai[j] -= f * rc[j]
    return d


def inverse(M: RatMatrix) -> RatMatrix:
    n = M.rows
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    I = RatMatrix.identity(n)
    R, piv = rref(RatMatrix.hstack([M, I]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R.submatrix(range(n), range(n, 2 * n))


def in_span(B: RatMatrix, v: Sequence) -> bool:
    """Is v in the column span of B?"""
    try:
        solve(B, v, unique=False)
        return True
    except ValueError:
        return False


def same_span(A: RatMatrix, B: RatMatrix) -> bool:
    ra, rb = rank(A), rank(B)
    return ra == rb == rank(RatMatrix.hstack([A, B]))


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots, lead=1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Q(r), 1])
        return p

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial: -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Rational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __call__(self, t):
        t = Q(t)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, o):
        o = _up(o)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, o):
        return self + (-_up(o))

    def __rsub__(self, o):
        return _up(o) - self

    def __mul__(self, o):
        o = _up(o)
        if not self.coeffs or not o.coeffs:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = UniPoly([1])
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, Rational)):
            o = UniPoly([o])
        if not isinstance(o, UniPoly):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(qstr(c) + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return "UniPoly(" + " + ".join(terms) + ")"

    def divmod(self, o: "UniPoly"):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(o.coeffs) + 1
        if dq <= 0:
            return UniPoly(), UniPoly(r)
        q = [ZERO] * dq
        lo = o.lead
        m = len(o.coeffs)
        for k in range(dq - 1, -1, -1):
            c = r[k + m - 1] / lo
            q[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    r[k + j] -= c * b
        return UniPoly(q), UniPoly(r[: m - 1])

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lead
        return UniPoly(c / lc for c in self.coeffs)

    def shift_scale(self, a, b) -> "UniPoly":
        """p(a + b t)."""
        out = UniPoly()
        lin = UniPoly([a, b])
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly([c])
        return out


def _up(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly([x])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    """Exact interpolating polynomial through (xs[i], ys[i]) (Newton form)."""
    xs, c = vec(xs), vec(ys)
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j])
    p = UniPoly([c[-1]]) if n else UniPoly()
    for i in range(n - 2, -1, -1):
        p = p * UniPoly([-xs[i], 1]) + UniPoly([c[i]])
    return p


# ---------------------------------------------------------------------------
# characteristic polynomial and PSD decisions


def char_poly(M: RatMatrix) -> UniPoly:
    """det(tI − M) via exact reduction to Hessenberg form."""
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    H = [list(r) for r in M._a]
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for r in H:
                r[i], r[m] = r[m], r[i]
        t = H[m][m - 1]
        for r in range(m + 1, n):
            u = H[r][m - 1]
            if not u:
                continue
            u /= t
            hr, hm = H[r], H[m]
            for j in range(n):
                if hm[j]:
                    hr[j] -= u * hm[j]
            for row in H:
                if row[r]:
                    row[m] += u * row[r]
    # characteristic polynomial of the Hessenberg matrix
    p = [UniPoly([1])]
    for m in range(1, n + 1):
        pm = UniPoly([-H[m - 1][m - 1], 1]) * p[m - 1]
        prod = ONE
        for i in range(1, m):
            prod *= H[m - i][m - i - 1]
            if not prod:
                break
            c = prod * H[m - i - 1][m - 1]
            if c:
                pm = pm - p[m - i - 1] * UniPoly([c])
        p.append(pm)
    return p[n]


def _require_symmetric(M: RatMatrix):
    if not M.is_symmetric():
        raise ValueError("matrix is not symmetric")


def psd_check(M: RatMatrix) -> bool:
    """Exact PSD test: every coefficient of det(tI + M) is nonnegative.

    det(tI+M) = Π(t+λ_i); with all λ_i ≥ 0 the coefficients are elementary
    symmetric functions of nonnegative numbers, and conversely a negative
    eigenvalue gives a positive root, impossible with nonnegative
    coefficients and a positive leading term.
    """
    _require_symmetric(M)
    return all(c >= 0 for c in char_poly(-M).coeffs)


@dataclass(frozen=True)
class LDLT:
    """Pᵗ·M·P = L·diag(D)·Lᵗ; ``perm[k]`` is the original index at position k."""

    L: RatMatrix
    D: tuple
    perm: tuple

    @property
    def P(self) -> RatMatrix:
        n = len(self.perm)
        a = [[ZERO] * n for _ in range(n)]
        for k, i in enumerate(self.perm):
            a[i][k] = ONE
        return RatMatrix._wrap(a, n, n)

    @property
    def Dmat(self) -> RatMatrix:
        return RatMatrix.diag(self.D)

    def rank(self) -> int:
        return sum(1 for x in self.D if x)


def ldlt_psd_decompose(M: RatMatrix) -> LDLT:
    """Exact LDLᵗ with largest-remaining-diagonal pivoting.

    Raises NotPSDError with a rational witness v (vᵗMv < 0) if M is
    found to be indefinite along the way.
    """
    _require_symmetric(M)
    n = M.rows
    S = [list(r) for r in M._a]
    perm = list(range(n))
    L = [[ZERO] * n for _ in range(n)]
    D = [ZERO] * n
    for k in range(n):
        p = max(range(k, n), key=lambda i: (S[i][i], -i))
        piv = S[p][p]
        if piv < 0:
            raise NotPSDError("negative pivot", _witness(L, perm, k, {p: ONE}, M))
        if piv == 0:
            # all remaining diagonal entries are 0 (max is 0, none negative)
            for i in range(k, n):
                for j in range(k, n):
                    if S[i][j]:
                        z = {i: -(S[j][j] + 1) / (2 * S[i][j]), j: ONE}
                        raise NotPSDError("nonzero entry on a zero diagonal row",
                                          _witness(L, perm, k, z, M))
            for i in range(k, n):
                L[i][i] = ONE
            break
        if p != k:
            S[k], S[p] = S[p], S[k]
            for r in S:
                r[k], r[p] = r[p], r[k]
            L[k], L[p] = L[p], L[k]
            perm[k], perm[p] = perm[p], perm[k]
        D[k] = piv
        L[k][k] = ONE
        sk = S[k]
        inv = 1 / piv
        for i in range(k + 1, n):
            L[i][k] = S[i][k] * inv
        for i in range(k + 1, n):
            li = L[i][k]
            if li:
                si = S[i]
                for j in range(k + 1, n):
                    if sk[j]:
                        si[j] -= li * sk[j]
    return LDLT(RatMatrix._wrap(L, n, n), tuple(D), tuple(perm))


def _witness(L, perm, k, z, M):
    """Vector v with vᵗMv = zᵗSz where S is the current Schur complement.

    z is given in positions >= k of the permuted order. Solve Lₖᵗ y = (0, z)
    with Lₖ the unit lower factor built so far, then undo the permutation.
    """
    n = len(perm)
    y = [ZERO] * n
    for i, c in z.items():
        y[i] = Q(c)
    for i in range(k - 1, -1, -1):
        s = ZERO
        for j in range(i + 1, n):
            if L[j][i] and y[j]:
                s += L[j][i] * y[j]
        y[i] = -s
    v = [ZERO] * n
    for pos, orig in enumerate(perm):
        v[orig] = y[pos]
    # sanity: the witness must really be negative
    assert dot(v, M @ v) < 0
    return v


def psd_witness(M: RatMatrix):
    """None if M is PSD, otherwise a rational v with vᵗMv < 0."""
    try:
        ldlt_psd_decompose(M)
        return None
    except NotPSDError as e:
        return e.witness


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_sequence(p: UniPoly) -> list:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return [s for s in seq if not s.is_zero()]


def _sign_changes(vals) -> int:
    signs = [v > 0 for v in vals if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _at_minus_inf(seq):
    return [s.lead * (-1 if s.degree % 2 else 1) for s in seq]


def _at_plus_inf(seq):
    return [s.lead for s in seq]


def count_real_roots(p: UniPoly) -> int:
    """Number of distinct real roots."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    return _sign_changes(_at_minus_inf(seq)) - _sign_changes(_at_plus_inf(seq))


def sturm_real_rooted(p: UniPoly) -> bool:
    """True iff every complex root of p is real."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = squarefree_part(p)
    return count_real_roots(q) == q.degree


def roots_all_nonneg(p: UniPoly) -> bool:
    """True iff p is real-rooted and has no root in (−∞, 0)."""
    if not sturm_real_rooted(p):
        return False
    q = squarefree_part(p)
    while q.degree > 0 and not q.coeff(0):
        q = UniPoly(q.coeffs[1:])
    if q.degree <= 0:
        return True
    seq = sturm_sequence(q)
    neg = _sign_changes(_at_minus_inf(seq)) - _sign_changes([s.coeff(0) for s in seq])
    return neg == 0


def char_poly_by_interpolation(M: RatMatrix) -> UniPoly:
    """Slow independent route to det(tI − M), for tests."""
    n = M.rows
    xs = list(range(n + 1))
    ys = [det(RatMatrix.identity(n).scale(x) - M) for x in xs]
    return interpolate(xs, ys)


__all__ = [
    "Rational", "Q", "qstr", "to_fraction", "vec", "dot", "RatMatrix", "as_matrix", "rref",
    "rank", "kernel_basis", "column_space", "solve", "det", "inverse", "in_span", "same_span",
    "UniPoly", "poly_gcd", "squarefree_part", "interpolate", "char_poly", "psd_check", "LDLT",
    "ldlt_psd_decompose", "psd_witness", "NotPSDError", "sturm_sequence", "count_real_roots",
    "sturm_real_rooted", "roots_all_nonneg", "char_poly_by_interpolation",
]
