"""Exact scalars over Q and Q(i), and homogeneous binary forms over Q(i).

Rationals are plain :class:`fractions.Fraction`. Gaussian rationals are a
small immutable pair of fractions. A :class:`BinaryForm` of degree ``d`` stores
``d + 1`` coefficients, coefficient ``k`` multiplying ``a0**k * a1**(d - k)``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

_FZERO = Fraction(0)

Rational = Fraction


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # skips the Fraction() re-wrap on hot paths; callers pass Fractions
        z = object.__new__(cls)
        object.__setattr__(z, "re", re)
        object.__setattr__(z, "im", im)
        return z

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, _RationalABC)):
            return cls(value, 0)
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact")
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return not self.is_zero()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.re + other.re, self.im + other.im)
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.re - other.re, self.im - other.im)
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            o = other
        else:
            try:
                o = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._raw(self.re * o.re, _FZERO)
        return GaussianRational._raw(self.re * o.re - self.im * o.im,
                                     self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_gaussian(self)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    """Render as a literal the parser accepts back, e.g. ``1/2``, ``-i``, ``2-3i``."""
    re, im = z.re, z.im
    if not im:
        return _fmt_fraction(re)
    if im == 1:
        im_s = "i"
    elif im == -1:
        im_s = "-i"
    elif im.denominator == 1:
        im_s = f"{im.numerator}i"
    else:
        im_s = f"{im.numerator}i/{im.denominator}"
    if not re:
        return im_s
    sign = "" if im_s.startswith("-") else "+"
    return f"{_fmt_fraction(re)}{sign}{im_s}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(value) -> GaussianRational:
    return GaussianRational.coerce(value)


# --- univariate helpers; lists are low degree first, no trailing zeros ---

def _trim(p: Sequence[GaussianRational]) -> list[GaussianRational]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _upoly_mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _trim(out)


def _upoly_divmod(p, q):
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(p)
    lead_inv = q[-1].inverse()
    dq = len(q) - 1
    quot = [ZERO] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] * lead_inv
        quot[shift] = c
        for k, b in enumerate(q):
            r[k + shift] = r[k + shift] - c * b
        r = _trim(r)
    return _trim(quot), r


def _upoly_monic(p):
    p = _trim(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _upoly_gcd(p, q):
    a, b = _trim(p), _trim(q)
    while b:
        _, r = _upoly_divmod(a, b)
        a, b = b, r
    return _upoly_monic(a)


def _upoly_deriv(p):
    return _trim([c * k for k, c in enumerate(p)][1:])


class BinaryForm:
    """Homogeneous form in (a0, a1) with Gaussian-rational coefficients.

    ``coeffs[k]`` multiplies ``a0**k * a1**(degree - k)``. The zero form keeps
    a nominal degree but :attr:`is_zero` is the flag callers must check.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(gr(c) for c in coeffs)
        if not cs:
            raise ValueError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @classmethod
    def zero(cls, degree: int = 0) -> "BinaryForm":
        return cls([ZERO] * (degree + 1))

    @classmethod
    def constant(cls, c=1) -> "BinaryForm":
        return cls([c])

    @classmethod
    def linear(cls, c0, c1) -> "BinaryForm":
        """``c0*a0 + c1*a1``."""
        return cls([c1, c0])

    A0: "BinaryForm"
    A1: "BinaryForm"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_constant(self) -> bool:
        return not self.is_zero and self.degree == 0

    def a1_multiplicity(self) -> int:
        """Exponent of the a1 factor, i.e. multiplicity of the root [1, 0]."""
        if self.is_zero:
            raise ValueError("zero form has no root multiplicities")
        k = self.degree
        while self.coeffs[k].is_zero():
            k -= 1
        return self.degree - k

    def dehomogenize(self) -> list[GaussianRational]:
        """Coefficients of f(t, 1), low degree first."""
        return _trim(self.coeffs)

    @classmethod
    def homogenize(cls, p: Sequence[GaussianRational], degree: int | None = None) -> "BinaryForm":
        p = _trim(p)
        d = len(p) - 1 if degree is None else degree
        if len(p) - 1 > d:
            raise ValueError("degree too small for polynomial")
        return cls(list(p) + [ZERO] * (d + 1 - len(p))) if d >= 0 else cls.zero()

    def normalize(self) -> "BinaryForm":
        """Scale so the coefficient of the highest a0 power present is 1."""
        if self.is_zero:
            return self
        k = self.degree
        while self.coeffs[k].is_zero():
            k -= 1
        inv = self.coeffs[k].inverse()
        return BinaryForm([c * inv for c in self.coeffs])

    def __call__(self, a0, a1) -> GaussianRational:
        a0, a1 = gr(a0), gr(a1)
        d = self.degree
        acc = ZERO
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * a0 ** k * a1 ** (d - k)
        return acc

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            if self.is_zero:
                return other
            if other.is_zero:
                return self
            raise ValueError("cannot add forms of different degree")
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm([-c for c in self.coeffs])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [ZERO] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return BinaryForm(out)
        c = gr(other)
        return BinaryForm([x * c for x in self.coeffs])

    def __rmul__(self, other):
        return BinaryForm([x * gr(other) for x in self.coeffs])

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def divides(self, other: "BinaryForm") -> bool:
        if self.is_zero:
            return other.is_zero
        if other.is_zero:
            return True
        if self.a1_multiplicity() > other.a1_multiplicity():
            return False
        _, r = _upoly_divmod(other.dehomogenize(), self.dehomogenize())
        return not r

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def same_up_to_scalar(self, other: "BinaryForm") -> bool:
        return self.normalize() == other.normalize()

    def __repr__(self):
        return f"BinaryForm({self})"

    def __str__(self):
        if self.is_zero:
            return "0"
        d = self.degree
        parts = []
        for k in range(d, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = []
            if k:
                mono.append("a0" if k == 1 else f"a0^{k}")
            if d - k:
                mono.append("a1" if d - k == 1 else f"a1^{d - k}")
            m = "*".join(mono)
            cs = format_gaussian(c)
            if not m:
                term = f"({cs})" if (c.re and c.im) else cs
            elif c == ONE:
                term = m
            elif c == -ONE:
                term = "-" + m
            elif c.re and c.im:
                term = f"({cs})*{m}"
            else:
                term = f"{cs}*{m}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


BinaryForm.A0 = BinaryForm([0, 1])
BinaryForm.A1 = BinaryForm([1, 0])


def bf_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Normalized gcd of two binary forms, keeping any shared power of a1."""
    if f.is_zero and g.is_zero:
        raise ValueError("gcd of zero forms undefined")
    if f.is_zero:
        return g.normalize()
    if g.is_zero:
        return f.normalize()
    e = min(f.a1_multiplicity(), g.a1_multiplicity())
    h = _upoly_gcd(f.dehomogenize(), g.dehomogenize())
    return BinaryForm.homogenize(h) * (BinaryForm.A1 ** e)


def _yun(p: list[GaussianRational]) -> list[tuple[list[GaussianRational], int]]:
    """Yun's squarefree decomposition of a univariate polynomial (char 0)."""
    if len(p) <= 1:
        return []
    dp = _upoly_deriv(p)
    a = _upoly_gcd(p, dp)
    b, _ = _upoly_divmod(p, a)
    c, _ = _upoly_divmod(dp, a)
    d = _trim([x - y for x, y in _zip_pad(c, _upoly_deriv(b))])
    out = []
    i = 1
    while len(b) > 1:
        a = _upoly_gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _upoly_divmod(b, a)
        c, _ = _upoly_divmod(d, a)
        d = _trim([x - y for x, y in _zip_pad(c, _upoly_deriv(b))])
        i += 1
    return out


def _zip_pad(p, q):
    n = max(len(p), len(q))
    return zip(list(p) + [ZERO] * (n - len(p)), list(q) + [ZERO] * (n - len(q)))


def bf_squarefree_decomposition(f: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Pairs ``(f_i, i)`` with ``f = unit * prod f_i**i``, sorted by ``i``.

    Each ``f_i`` is normalized, squarefree and coprime to the others. The a1
    factor is folded into the part with matching multiplicity.
    """
    if f.is_zero:
        raise ValueError("squarefree decomposition of the zero form")
    parts: dict[int, BinaryForm] = {
        i: BinaryForm.homogenize(_upoly_monic(p)) for p, i in _yun(f.dehomogenize())
    }
    e = f.a1_multiplicity()
    if e:
        parts[e] = parts[e] * BinaryForm.A1 if e in parts else BinaryForm.A1
    return [(parts[i].normalize(), i) for i in sorted(parts)]


def bf_distinct_root_count(f: BinaryForm) -> int:
    """Number of distinct roots of ``f`` in CP^1."""
    if f.is_zero:
        raise ValueError("zero form vanishes on all of CP^1")
    # degree of the squarefree part: deg p - deg gcd(p, p'), plus the root [1, 0]
    p = f.dehomogenize()
    count = 1 if f.a1_multiplicity() else 0
    if len(p) > 1:
        count += len(p) - len(_upoly_gcd(p, _upoly_deriv(p)))
    return count


def interpolate_form(values: Sequence[GaussianRational], degree: int) -> BinaryForm:
    """Binary form of ``degree`` from its values at [k, 1], k = 0..degree."""
    if len(values) != degree + 1:
        raise ValueError("need degree + 1 samples")
    # Newton divided differences at nodes 0..degree
    coef = [gr(v) for v in values]
    for level in range(1, degree + 1):
        for k in range(degree, level - 1, -1):
            coef[k] = (coef[k] - coef[k - 1]) / (k - (k - level))
    poly = [ZERO] * (degree + 1)
    for k in range(degree, -1, -1):
        # poly = poly * (t - k) + coef[k]
        shifted = [ZERO] + poly[:-1]
        poly = [s - p * k for s, p in zip(shifted, poly)]
        poly[0] = poly[0] + coef[k]
    return BinaryForm(poly)
