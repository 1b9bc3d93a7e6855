"""Rank stratification of a pencil of complex quadrics a0*Q0 + a1*Q1.

All binary forms here are obtained by evaluating at the parameter points
[k, 1], k = 0, 1, ..., and interpolating; determinants are fraction-free.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from .exactnum import (
    BinaryForm,
    GaussianRational,
    bf_distinct_root_count,
    bf_gcd,
    bf_squarefree_decomposition,
    gr,
    interpolate_form,
)
from .symlin import MAX_N, ComplexSymMatrix, _bareiss_det_gint, rank, rank_complex


class Classification(str, enum.Enum):
    COMPLETE_INTERSECTION = "CompleteIntersection"
    CONSTANT_RANK = "ConstantRank"
    GENERIC_DETERMINANT = "GenericDeterminant"
    OTHER = "Other"


@dataclass(frozen=True)
class Pencil:
    n: int
    Q0: ComplexSymMatrix
    Q1: ComplexSymMatrix

    def __post_init__(self):
        if self.Q0.size != self.n + 1 or self.Q1.size != self.n + 1:
            raise ValueError("pencil matrices must have size n + 1")
        if self.Q0.is_zero() and self.Q1.is_zero():
            raise ValueError("pencil spanned by two zero forms")
        if self.n > MAX_N:
            raise ValueError(f"n = {self.n} exceeds the guard n <= {MAX_N}")

    def at(self, a0, a1) -> ComplexSymMatrix:
        return self.Q0.scale(a0) + self.Q1.scale(a1)

    def is_dependent(self) -> bool:
        """True when Q0 and Q1 are proportional (the span is one quadric)."""
        v0 = [x for r in self.Q0.rows for x in r]
        v1 = [x for r in self.Q1.rows for x in r]
        return rank([v0, v1]) < 2

    def _scaled(self):
        den = 1
        for M in (self.Q0, self.Q1):
            for r in M.rows:
                for x in r:
                    den = lcm(den, x.re.denominator, x.im.denominator)

        def to_int(M):
            return [[(int(x.re * den), int(x.im * den)) for x in r] for r in M.rows]

        return to_int(self.Q0), to_int(self.Q1), den


class _Sampler:
    """Integer copies of the pencil at [k, 1] for k = 0..n+1."""

    def __init__(self, p: Pencil):
        q0, q1, self.den = p._scaled()
        m = p.n + 1
        self.mats = [
            [[(k * q0[i][j][0] + q1[i][j][0], k * q0[i][j][1] + q1[i][j][1]) for j in range(m)]
             for i in range(m)]
            for k in range(m + 1)
        ]
        self.support = [[q0[i][j] != (0, 0) or q1[i][j] != (0, 0) for j in range(m)]
                        for i in range(m)]

    def minor(self, rows, cols) -> BinaryForm:
        j = len(rows)
        values = []
        for k in range(j + 1):
            M = self.mats[k]
            d = _bareiss_det_gint([[M[r][c] for c in cols] for r in rows])
            values.append(GaussianRational(d[0], d[1]))
        # undo the common denominator cleared in _scaled
        return interpolate_form(values, j) * Fraction(1, self.den ** j)

    def structurally_zero(self, rows, cols) -> bool:
        sup = self.support
        if any(not any(sup[r][c] for c in cols) for r in rows):
            return True
        return any(not any(sup[r][c] for r in rows) for c in cols)


def det_form(p: Pencil) -> BinaryForm:
    """det(a0*Q0 + a1*Q1) as a degree-(n+1) binary form (zero form if it vanishes)."""
    m = p.n + 1
    return _Sampler(p).minor(tuple(range(m)), tuple(range(m)))


def minor_gcd(p: Pencil, j: int, _sampler: _Sampler | None = None) -> BinaryForm:
    """Normalized gcd of all j x j minors of the pencil; zero form if they all vanish."""
    m = p.n + 1
    if not 1 <= j <= m:
        raise ValueError(f"minor size {j} outside 1..{m}")
    s = _sampler or _Sampler(p)
    g = None
    subsets = list(combinations(range(m), j))
    for a, rows in enumerate(subsets):
        # symmetric matrix: minor(rows, cols) equals minor(cols, rows)
        for cols in subsets[a:]:
            if s.structurally_zero(rows, cols):
                continue
            f = s.minor(rows, cols)
            if f.is_zero:
                continue
            g = f.normalize() if g is None else bf_gcd(g, f)
            if g.degree == 0:
                return g
    return BinaryForm.zero(j) if g is None else g


def generic_rank(p: Pencil) -> int:
    """Maximal rank over CP^1.

    Rank drops below the maximum at no more than n+1 points, so the maximum
    over the n+2 samples [k, 1] is exact.
    """
    return max(rank_complex(p.at(k, 1)) for k in range(p.n + 2))


@dataclass(frozen=True)
class PencilProfile:
    n: int
    mu: int
    nu: int
    det_form: BinaryForm
    sigma: dict = field(hash=False)
    minor_gcds: dict = field(hash=False, repr=False)
    sqfree_decomp: tuple = ()
    exists_odd_multiplicity: bool = False
    classification: Classification = Classification.OTHER

    def sigma_at(self, j: int) -> int:
        """sigma_j with sigma_0 = 0; only meaningful for j <= mu."""
        if j <= 0:
            return 0
        return self.sigma[j]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """Multiplicities of the distinct det roots, one per root."""
        out = []
        for g, i in self.sqfree_decomp:
            out.extend([i] * g.degree)
        return tuple(out)


def classify(n: int, mu: int, nu: int, sigma: dict) -> Classification:
    if mu == n + 1 and sigma.get(mu) == n + 1 and nu == n:
        return Classification.COMPLETE_INTERSECTION
    if mu == nu:
        return Classification.CONSTANT_RANK
    if mu == n + 1 and sigma.get(mu, 0) >= 2:
        return Classification.GENERIC_DETERMINANT
    return Classification.OTHER


def profile(p: Pencil) -> PencilProfile:
    s = _Sampler(p)
    m = p.n + 1
    mu = generic_rank(p)
    gcds: dict[int, BinaryForm] = {}
    sigma: dict[int, int] = {}
    # g_{j-1} divides g_j, so once g_j is constant every smaller sigma is 0
    constant_below = False
    for j in range(mu, 0, -1):
        if constant_below:
            sigma[j] = 0
            continue
        if j == m:
            g = det_form(p).normalize()
        else:
            g = minor_gcd(p, j, s)
        gcds[j] = g
        sigma[j] = bf_distinct_root_count(g)
        if sigma[j] == 0:
            constant_below = True
    nu = mu
    for j in range(0, mu):
        if sigma.get(j + 1, 0) > (sigma.get(j, 0) if j else 0):
            nu = j
            break
    dform = det_form(p)
    decomp: tuple = ()
    odd = False
    if not dform.is_zero:
        decomp = tuple(bf_squarefree_decomposition(dform))
        odd = any(i % 2 for _, i in decomp)
    return PencilProfile(
        n=p.n,
        mu=mu,
        nu=nu,
        det_form=dform,
        sigma=dict(sorted(sigma.items())),
        minor_gcds=gcds,
        sqfree_decomp=decomp,
        exists_odd_multiplicity=odd,
        classification=classify(p.n, mu, nu, sigma),
    )


def diagonal_pencil(d0, d1) -> Pencil:
    n = len(d0) - 1
    Q0 = ComplexSymMatrix([[gr(d0[i]) if i == j else gr(0) for j in range(n + 1)] for i in range(n + 1)])
    Q1 = ComplexSymMatrix([[gr(d1[i]) if i == j else gr(0) for j in range(n + 1)] for i in range(n + 1)])
    return Pencil(n, Q0, Q1)
