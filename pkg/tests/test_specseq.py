"""Pages, differentials, the branch solver and the closed forms."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import CONSTANT_RANK, SKEW_CUBIC, make_pencil, sym_matrices
from quadbetti.pencil import Classification, diagonal_pencil, profile
from quadbetti.specseq import (
    Constraints,
    DifferentialAssignment,
    PageTable,
    Provenance,
    SingleQuadric,
    Status,
    alternating_sums,
    analyze,
    betti_C_from_R,
    betti_R_from,
    closed_form_complete_intersection,
    closed_form_single,
    constraint_failures,
    d2_ranks,
    d2_single,
    e2_pencil,
    e2_single,
    solve,
    turn_page,
)

SKEW_E2 = [
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1],
]
SKEW_E3 = [
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1],
]


def ci(n):
    return profile(diagonal_pencil([1] * (n + 1), list(range(n + 1))))


def ranks_of(ds):
    return {d.label(): (d.rank, d.provenance) for d in ds}


# --- E2 ---

def test_e2_single_patterns():
    t = e2_single(2, 3)
    assert t.column(0) == [0, 0, 0, 1, 1, 1]
    assert t.column(2) == [1, 1, 1, 0, 0, 0]
    t = e2_single(0, 1)
    assert t.column(0) == [0, 1] and t.column(2) == [1, 0]
    t = e2_single(3, 4)
    assert t.column(0) == [0] * 4 + [1] * 4 and t.column(2) == [1] * 4 + [0] * 4


def test_e2_single_rejects_rank_zero():
    with pytest.raises(ValueError):
        e2_single(2, 0)
    with pytest.raises(ValueError):
        e2_single(2, 4)


def test_e2_skew_cubic(skew_cubic):
    assert e2_pencil(profile(skew_cubic)).as_lists() == SKEW_E2


def test_e2_constant_rank(constant_rank):
    t = e2_pencil(profile(constant_rank))
    assert t.column(0) == [0, 0, 1, 1, 1, 1]
    assert t.column(4) == [1, 1, 0, 0, 0, 0]
    assert t.column(2) == t.column(3) == [0] * 6


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_e2_complete_intersection(n):
    t = e2_pencil(ci(n))
    assert t.column(0) == [0] * (n + 1) + [1] * (n + 1)
    assert (t[2, n], t[3, n]) == (n + 1, n)
    assert t.column(4) == [1] * n + [0] * (n + 2)


# --- d2 ---

def test_d2_skew_cubic(skew_cubic):
    r = ranks_of(d2_ranks(profile(skew_cubic)))
    assert r["d2^(0,4)"] == (0, Provenance.FORMULA)
    assert r["d2^(2,3)"] == (1, Provenance.FORMULA)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_d2_complete_intersection(n):
    r = ranks_of(d2_ranks(ci(n)))
    assert r[f"d2^(0,{n + 1})"] == (1, Provenance.FORMULA)
    assert r[f"d2^(2,{n})"] == (n % 2, Provenance.FORMULA)


def test_d2_single_parity():
    for n in range(1, 5):
        for rho in range(1, n + 2):
            r = ranks_of(d2_single(n, rho))
            assert r[f"d2^(0,{rho})"] == (rho % 2, Provenance.FORMULA)


def test_d2_unknown_is_enumerated():
    # rank drops to 1 generically: no formula for d2^{0,mu} with mu < n+1
    pp = profile(diagonal_pencil([1, 0, 0], [0, 1, 0]))
    assert pp.mu == 2
    r = ranks_of(d2_ranks(pp))
    assert r["d2^(0,2)"] == (None, Provenance.ENUMERATED)


# --- turning pages ---

def test_turn_page_skew_cubic(skew_cubic):
    pp = profile(skew_cubic)
    e3 = turn_page(e2_pencil(pp), 2, d2_ranks(pp))
    assert e3.as_lists() == SKEW_E3


def test_turn_page_zero_differentials_is_identity():
    t = e2_single(3, 2)
    zero = [DifferentialAssignment(2, s, 0, Provenance.FORCED_ZERO) for s in t.nonzero()]
    assert turn_page(t, 2, zero) == t


def test_turn_page_ci_even():
    n = 4
    pp = ci(n)
    e3 = turn_page(e2_pencil(pp), 2, d2_ranks(pp))
    assert (e3[2, n], e3[3, n]) == (n, n)
    assert e3[0, n + 1] == 0


def test_turn_page_rank_bound_violation():
    t = e2_single(2, 3)
    with pytest.raises(ValueError, match="dimension bounds"):
        turn_page(t, 2, [DifferentialAssignment(2, (0, 3), 2, Provenance.ENUMERATED)])
    with pytest.raises(ValueError):
        turn_page(t, 2, [DifferentialAssignment(3, (0, 3), 0, Provenance.ENUMERATED)])


# --- solve ---

def test_solve_skew_cubic(skew_cubic):
    r = solve(profile(skew_cubic))
    assert r.status is Status.RESOLVED
    assert r.betti_R == [1, 1, 2, 2, 0, 0, 0, 0]
    assert r.betti_C == [1, 0, 2, 0, 0, 0, 0]
    assert r.iC_even_ranks[0] == r.iC_even_ranks[1] == 1
    assert r.e2_snapshot.as_lists() == SKEW_E2
    assert r.pages[1].as_lists() == SKEW_E3


def test_solve_constant_rank(constant_rank):
    r = solve(profile(constant_rank))
    assert r.status is Status.RESOLVED
    assert r.betti_R == [2, 2, 1, 1, 0, 0]
    assert r.betti_C == [2, 0, 1, 0, 0]
    assert r.e_inf_snapshot == r.e2_snapshot


def test_solve_single_plane_conic_pair():
    assert solve(SingleQuadric(2, 2)).betti_C == [1, 0, 2, 0, 0]


def test_ci_odd_reaches_e4():
    n = 3
    r = solve(ci(n))
    assert r.e_inf_snapshot[0, n + 2] == 0
    assert (r.e_inf_snapshot[2, n], r.e_inf_snapshot[3, n]) == (n - 1, n - 1)


def test_ambiguous_fixture_lists_candidates():
    pp = profile(diagonal_pencil([1, 0, 0], [0, 1, 0]))
    r = solve(pp)
    assert r.status is Status.AMBIGUOUS
    assert len(r.candidates) >= 2
    assert [c for _, c in r.candidates] == [[1, 0, 0, 0, 0], [1, 1, 1, 0, 0]]
    assert r.candidates == sorted(r.candidates)
    assert "d2^(0,2)" in r.distinguishing


def test_odd_column_block_fails_filter():
    # column 0 of odd length can never pass the filters
    t = PageTable.from_dict(1, 3, {(0, 3): 1})
    assert "column0" in constraint_failures(t, nonempty=False)


def test_basic_filters_alone_resolve_the_examples(skew_cubic, constant_rank):
    loose = Constraints(structural=False)
    for p in (skew_cubic, constant_rank):
        pp = profile(p)
        assert solve(pp, loose).betti_C == solve(pp).betti_C


# --- closed forms ---

def test_closed_form_single_examples():
    assert closed_form_single(2, 3) == [1, 0, 1, 0, 0]
    assert closed_form_single(2, 2) == [1, 0, 2, 0, 0]
    assert closed_form_single(3, 1) == [1, 0, 1, 0, 1, 0, 0]


def test_closed_form_ci_examples():
    assert closed_form_complete_intersection(3) == [1, 2, 1, 0, 0, 0, 0]
    assert closed_form_complete_intersection(4) == [1, 0, 6, 0, 1, 0, 0, 0, 0]
    assert closed_form_complete_intersection(2) == [4, 0, 0, 0, 0]


@pytest.mark.parametrize("n", range(1, 7))
def test_single_path_matches_closed_form(n):
    for rho in range(1, n + 2):
        assert solve(SingleQuadric(n, rho)).betti_C == closed_form_single(n, rho)


# --- invariants over random pencils ---

def _check_report(r):
    e = r.e_inf_snapshot
    n = r.n
    assert betti_R_from(e) == r.betti_R
    assert betti_C_from_R(r.betti_R) == r.betti_C
    assert all(b >= 0 for b in alternating_sums(r.betti_R))
    for a in range(n + 1):
        assert e[0, 2 * a] == e[0, 2 * a + 1]


@settings(max_examples=30)
@given(st.lists(st.integers(min_value=-2, max_value=2), min_size=6, max_size=10))
def test_invariants_on_diagonal_pencils(vals):
    m = len(vals) // 2
    d0, d1 = vals[:m], vals[m:2 * m]
    if not any(d0) or not any(d1):
        return
    a = analyze(m - 1, [diagonal_pencil(d0, d1).Q0, diagonal_pencil(d0, d1).Q1])
    _check_report(a.report)
    for bR, bC in a.report.candidates:
        assert betti_C_from_R(bR) == bC
    if a.profile is not None and a.profile.classification is Classification.COMPLETE_INTERSECTION:
        assert a.report.betti_C == closed_form_complete_intersection(m - 1)


@settings(max_examples=25)
@given(sym_matrices(min_size=3, max_size=4, sparse=True), sym_matrices(min_size=3, max_size=4, sparse=True))
def test_invariants_on_random_pencils(Q0, Q1):
    if Q0.size != Q1.size:
        return
    a = analyze(Q0.size - 1, [Q0, Q1])
    _check_report(a.report)


def test_composition_never_forced_nonzero():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 5)
        d0 = [rng.choice([1, 2, -1]) for _ in range(n + 1)]
        d1 = [rng.choice([0, 1, 3, -2]) for _ in range(n + 1)]
        pp = profile(diagonal_pencil(d0, d1))
        d2_ranks(pp)  # raises InconsistentProfile on a forced nonzero composition


def test_proportional_pair_is_rerouted():
    q0, _, n = SKEW_CUBIC
    p = make_pencil(q0, q0, n)
    a = analyze(n, [p.Q0, p.Q1.scale(2)])
    assert a.route == "single"
    assert any("proportional" in s for s in a.notes)
    assert a.report.betti_C == closed_form_single(3, 3)
