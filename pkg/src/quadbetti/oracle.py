"""Independent checks: resultant point counts for plane conic pairs.

The count never touches the spectral sequence. Each frame is a random
invertible integer change of coordinates; the transformed conics are written
as polynomials in w2 and eliminated by their Sylvester resultant, a quartic
binary form in (w0, w1) whose distinct roots are the projections of the
intersection points from [0, 0, 1].
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .exactnum import BinaryForm, bf_distinct_root_count
from .pencil import PencilProfile
from .specseq import BettiReport, Status
from .symlin import ComplexSymMatrix, congruent, det


@dataclass(frozen=True)
class PointCount:
    value: int | None  # None when infinite
    certified: bool
    frames: tuple = field(default=(), compare=False)

    @property
    def infinite(self) -> bool:
        return self.value is None


def _conic_in_w2(Q: ComplexSymMatrix) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
    """q = a*w2^2 + b*w2 + c with a constant, b linear, c quadratic in (w0, w1)."""
    a = BinaryForm.constant(Q[2, 2])
    b = BinaryForm.linear(Q[0, 2] * 2, Q[1, 2] * 2)
    c = BinaryForm([Q[1, 1], Q[0, 1] * 2, Q[0, 0]])
    return a, b, c


def conic_resultant(Q0: ComplexSymMatrix, Q1: ComplexSymMatrix) -> BinaryForm:
    """Res_{w2}(q0, q1) as a quartic binary form."""
    a, b, c = _conic_in_w2(Q0)
    a_, b_, c_ = _conic_in_w2(Q1)
    ac = a * c_ - a_ * c
    ab = a * b_ - a_ * b
    bc = b * c_ - b_ * c
    return ac * ac - ab * bc


def random_frame(rng: random.Random, bound: int = 10**4) -> list[list[int]]:
    while True:
        T = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        if det(T):
            return T


def count_in_frame(Q0: ComplexSymMatrix, Q1: ComplexSymMatrix, T) -> int | None:
    res = conic_resultant(congruent(Q0, T), congruent(Q1, T))
    if res.is_zero:
        return None
    return bf_distinct_root_count(res)


def point_count_cp2(Q0: ComplexSymMatrix, Q1: ComplexSymMatrix, seed: int = 0,
                    max_frames: int = 8) -> PointCount:
    """Number of points of V(q0, q1) in CP^2, certified by two agreeing frames."""
    if Q0.size != 3 or Q1.size != 3:
        raise ValueError("point_count_cp2 needs conics in CP^2 (n = 2)")
    rng = random.Random(seed)
    seen: list = []
    for _ in range(max_frames):
        value = count_in_frame(Q0, Q1, random_frame(rng))
        if value in seen:
            return PointCount(value, True, tuple(seen + [value]))
        seen.append(value)
    value = Counter(seen).most_common(1)[0][0]
    return PointCount(value, False, tuple(seen))


def cross_check(report: BettiReport, pc: PointCount, pp: PencilProfile | None = None) -> bool:
    """Compare a plane report with a certified finite point count.

    With a profile, also checks the four-point criterion: four points exactly
    when the determinant has three distinct roots.
    """
    if report.n != 2:
        raise ValueError("cross_check applies to n = 2 only")
    if report.status is not Status.RESOLVED:
        raise ValueError("cross_check needs a resolved report")
    if not pc.certified or pc.infinite:
        raise ValueError("cross_check needs a certified finite point count")
    ok = report.betti_C == [pc.value, 0, 0, 0, 0]
    if pp is not None:
        roots = None if pp.det_form.is_zero else bf_distinct_root_count(pp.det_form)
        ok = ok and ((pc.value == 4) == (roots == 3))
    return ok
