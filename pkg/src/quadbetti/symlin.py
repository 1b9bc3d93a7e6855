"""Exact symmetric linear algebra over Q and Q(i).

Ranks and determinants use fraction-free (Bareiss) elimination on a
Gaussian-integer copy of the matrix; inertia uses symmetric congruence over
the rationals. The realification maps send the Gram matrix Q = A - iB of a
complex quadric q to the Gram matrices of Re q(x + iy) and Im q(x + iy).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .exactnum import ZERO, GaussianRational, gr

MAX_N = 12


class _SymMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable], check: bool = True):
        rows = tuple(tuple(self._coerce(x) for x in r) for r in rows)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("matrix must be square")
        if check:
            for i in range(m):
                for j in range(i + 1, m):
                    if rows[i][j] != rows[j][i]:
                        raise ValueError(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @classmethod
    def zeros(cls, m: int):
        z = cls._coerce(0)
        return cls([[z] * m for _ in range(m)], check=False)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __add__(self, other):
        if type(other) is not type(self) or other.size != self.size:
            return NotImplemented
        return type(self)([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          check=False)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.rows], check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self._coerce(c)
        return type(self)([[c * a for a in r] for r in self.rows], check=False)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"{type(self).__name__}([{body}])"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list]:
        return [[self.rows[i][j] for j in cols] for i in rows]


class ComplexSymMatrix(_SymMatrix):
    """Symmetric matrix with Gaussian-rational entries (Gram matrix of q)."""

    __slots__ = ()
    _coerce = staticmethod(gr)

    @classmethod
    def from_real(cls, m: "RealSymMatrix", im: "RealSymMatrix | None" = None) -> "ComplexSymMatrix":
        if im is None:
            return cls([[GaussianRational(x) for x in r] for r in m.rows], check=False)
        return cls([[GaussianRational(a, b) for a, b in zip(r, s)] for r, s in zip(m.rows, im.rows)],
                   check=False)


class RealSymMatrix(_SymMatrix):
    """Symmetric matrix with rational entries."""

    __slots__ = ()
    _coerce = staticmethod(Fraction)


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    @property
    def size(self) -> int:
        return self.positive + self.negative + self.zero


# --- Gaussian-integer kernels (pairs of ints) ---

def _to_gint(rows: Sequence[Sequence]) -> tuple[list[list[tuple[int, int]]], int]:
    """Scale a Q(i) matrix to Z[i]; returns (matrix, scale)."""
    den = 1
    for r in rows:
        for x in r:
            x = gr(x)
            den = lcm(den, x.re.denominator, x.im.denominator)
    out = []
    for r in rows:
        row = []
        for x in r:
            x = gr(x)
            row.append((int(x.re * den), int(x.im * den)))
        out.append(row)
    return out, den


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv_exact(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise ArithmeticError("Bareiss division not exact")
    return (qr, qi)


def _bareiss_det_gint(m: list[list[tuple[int, int]]]) -> tuple[int, int]:
    m = [list(r) for r in m]
    size = len(m)
    if size == 0:
        return (1, 0)
    sign = 1
    prev = (1, 0)
    for k in range(size - 1):
        if m[k][k] == (0, 0):
            for p in range(k + 1, size):
                if m[p][k] != (0, 0):
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        piv = m[k][k]
        for i in range(k + 1, size):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, size):
                a = _gmul(piv, row_i[j])
                b = _gmul(mik, row_k[j])
                row_i[j] = _gdiv_exact((a[0] - b[0], a[1] - b[1]), prev)
        prev = piv
    d = m[size - 1][size - 1]
    return (sign * d[0], sign * d[1])


def _bareiss_rank_gint(m: list[list[tuple[int, int]]]) -> int:
    m = [list(r) for r in m]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != (0, 0)), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                a = _gmul(piv, row_i[j])
                b = _gmul(mic, row_r[j])
                row_i[j] = _gdiv_exact((a[0] - b[0], a[1] - b[1]), prev)
            row_i[c] = (0, 0)
        prev = piv
        r += 1
    return r


def det(rows: Sequence[Sequence]) -> GaussianRational:
    """Exact determinant of a square Q(i) matrix (Bareiss)."""
    m, den = _to_gint(rows)
    d = _bareiss_det_gint(m)
    scale = Fraction(1, den ** len(m))
    return GaussianRational(d[0] * scale, d[1] * scale)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a (not necessarily square) Q(i) matrix."""
    if not rows or not rows[0]:
        return 0
    m, _ = _to_gint(rows)
    return _bareiss_rank_gint(m)


def _rows(M) -> Sequence[Sequence]:
    return M.rows if isinstance(M, _SymMatrix) else M


def rank_complex(M: ComplexSymMatrix) -> int:
    return rank(_rows(M))


def rank_real(M: RealSymMatrix) -> int:
    return rank(_rows(M))


def decompose(Q: ComplexSymMatrix) -> tuple[RealSymMatrix, RealSymMatrix]:
    """Split Q = A - iB into its real symmetric parts A and B."""
    A = RealSymMatrix([[x.re for x in r] for r in Q.rows], check=False)
    B = RealSymMatrix([[-x.im for x in r] for r in Q.rows], check=False)
    return A, B


def _blocks(tl, tr, bl, br) -> RealSymMatrix:
    top = [list(a) + list(b) for a, b in zip(tl.rows, tr.rows)]
    bottom = [list(a) + list(b) for a, b in zip(bl.rows, br.rows)]
    return RealSymMatrix(top + bottom, check=False)


def realify_a(Q: ComplexSymMatrix) -> RealSymMatrix:
    """Gram matrix [[A, B], [B, -A]] of Re q(x + iy) in coordinates (x, y)."""
    A, B = decompose(Q)
    return _blocks(A, B, B, -A)


def realify_b(Q: ComplexSymMatrix) -> RealSymMatrix:
    """Gram matrix [[-B, A], [A, B]] of Im q(x + iy) in coordinates (x, y)."""
    A, B = decompose(Q)
    return _blocks(-B, A, A, B)


def inertia(M: RealSymMatrix) -> Inertia:
    """Signature by symmetric congruence with 1x1 and hyperbolic 2x2 pivots."""
    a = [list(r) for r in _rows(M)]
    size = len(a)
    idx = list(range(size))
    pos = neg = 0
    while idx:
        k = next((i for i in idx if a[i][i]), None)
        if k is not None:
            d = a[k][k]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(k)
            col = [(i, a[i][k]) for i in idx if a[i][k]]
            for i, aik in col:
                f = aik / d
                row_i, row_k = a[i], a[k]
                for j in idx:
                    if row_k[j]:
                        row_i[j] -= f * row_k[j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j]), None)
        if pair is None:
            break
        k, l = pair
        c = a[k][l]
        pos += 1
        neg += 1
        idx.remove(k)
        idx.remove(l)
        # Schur complement of the block [[0, c], [c, 0]]
        for i in idx:
            aik, ail = a[i][k], a[i][l]
            if not aik and not ail:
                continue
            for j in idx:
                upd = aik * a[l][j] + ail * a[k][j]
                if upd:
                    a[i][j] -= upd / c
    return Inertia(pos, neg, size - pos - neg)


def w1_parity(Q: ComplexSymMatrix) -> int:
    """First Stiefel-Whitney class of the positive eigenbundle over the rotation circle."""
    return rank_complex(Q) % 2


def gram_from_coefficients(n: int, coeffs: dict[tuple[int, int], GaussianRational]) -> ComplexSymMatrix:
    """Gram matrix of sum c_ij z_i z_j; keys are (i, j) with i <= j."""
    m = [[ZERO] * (n + 1) for _ in range(n + 1)]
    for (i, j), c in coeffs.items():
        c = gr(c)
        if i == j:
            m[i][i] = m[i][i] + c
        else:
            half = c / 2
            m[i][j] = m[i][j] + half
            m[j][i] = m[j][i] + half
    return ComplexSymMatrix(m, check=False)


def coefficients_from_gram(Q: ComplexSymMatrix) -> dict[tuple[int, int], GaussianRational]:
    out = {}
    for i in range(Q.size):
        for j in range(i, Q.size):
            c = Q[i, i] if i == j else Q[i, j] * 2
            if c:
                out[(i, j)] = c
    return out


def evaluate_form(Q, z: Sequence) -> GaussianRational:
    """z^T Q z for a Gram matrix over Q or Q(i)."""
    z = [gr(x) for x in z]
    acc = ZERO
    rows = _rows(Q)
    for i, zi in enumerate(z):
        if not zi:
            continue
        for j, zj in enumerate(z):
            if rows[i][j]:
                acc = acc + zi * gr(rows[i][j]) * zj
    return acc


def congruent(Q: ComplexSymMatrix, T: Sequence[Sequence]) -> ComplexSymMatrix:
    """T^T Q T, the Gram matrix of q(T w)."""
    m = Q.size
    k = len(T[0])
    if all(isinstance(x, int) for r in T for x in r):
        # integer frame: clear denominators and stay in Z[i]
        q, den = _to_gint(Q.rows)
        qt = [[(sum(q[i][l][0] * T[l][j] for l in range(m)), sum(q[i][l][1] * T[l][j] for l in range(m)))
               for j in range(k)] for i in range(m)]
        return ComplexSymMatrix(
            [[GaussianRational(Fraction(sum(T[l][i] * qt[l][j][0] for l in range(m)), den),
                               Fraction(sum(T[l][i] * qt[l][j][1] for l in range(m)), den))
              for j in range(k)] for i in range(k)],
            check=False,
        )
    T = [[gr(x) for x in r] for r in T]
    QT = [[sum((Q[i, l] * T[l][j] for l in range(m)), ZERO) for j in range(k)] for i in range(m)]
    return ComplexSymMatrix(
        [[sum((T[l][i] * QT[l][j] for l in range(m)), ZERO) for j in range(k)] for i in range(k)],
        check=False,
    )
