"""Z2-Betti numbers of complex projective sets cut by one or two quadrics."""

from .exactnum import BinaryForm, GaussianRational, bf_distinct_root_count, bf_gcd, bf_squarefree_decomposition
from .oracle import PointCount, cross_check, point_count_cp2
from .pencil import Classification, Pencil, PencilProfile, det_form, minor_gcd, profile
from .qparse import InputSpec, QuadricParseError, format_quadric, parse_quadric, run
from .specseq import (
    BettiReport,
    Constraints,
    SingleQuadric,
    Status,
    analyze,
    closed_form_complete_intersection,
    closed_form_single,
    solve,
)
from .symlin import ComplexSymMatrix, Inertia, RealSymMatrix, inertia, rank_complex, realify_a, realify_b

__version__ = "0.1.0"
