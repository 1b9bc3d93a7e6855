"""Z2 spectral sequence for R ⊂ RP^{2n+1} cut by one or two complex quadrics.

Pages are grids of dimensions ``E[i, j]`` with rows ``j = 0..2n+1`` and
columns ``i = 0..ncols-1``; ``d_r`` maps ``(i, j)`` to ``(i + r, j - r + 1)``.
Differentials are tracked by rank only. Known d2 ranks come from the
degeneracy data of the pencil; every other differential between nonzero
groups is enumerated and the resulting E_inf candidates are filtered by
structural constraints. The abutment is ``H_{2n+1-*}(R)``, and the Betti
numbers of C follow from the alternating-sum relation.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .pencil import Classification, Pencil, PencilProfile, profile
from .symlin import ComplexSymMatrix, rank_complex


class Provenance(str, enum.Enum):
    FORMULA = "Formula"
    FORCED_ZERO = "ForcedZero"
    ENUMERATED = "Enumerated"


class Status(str, enum.Enum):
    RESOLVED = "resolved"
    AMBIGUOUS = "ambiguous"


class InconsistentProfile(RuntimeError):
    pass


@dataclass(frozen=True)
class PageTable:
    """Dimensions of one page; ``entries[j][i]`` is dim E^{i,j}."""

    n: int
    ncols: int
    entries: tuple

    @classmethod
    def empty(cls, n: int, ncols: int) -> "PageTable":
        return cls(n, ncols, tuple((0,) * ncols for _ in range(2 * n + 2)))

    @classmethod
    def from_dict(cls, n: int, ncols: int, values: dict) -> "PageTable":
        grid = [[0] * ncols for _ in range(2 * n + 2)]
        for (i, j), v in values.items():
            grid[j][i] = v
        return cls(n, ncols, tuple(tuple(r) for r in grid))

    @property
    def nrows(self) -> int:
        return 2 * self.n + 2

    def __getitem__(self, ij) -> int:
        i, j = ij
        if 0 <= i < self.ncols and 0 <= j < self.nrows:
            return self.entries[j][i]
        return 0

    def column(self, i: int) -> list[int]:
        return [self.entries[j][i] for j in range(self.nrows)]

    def nonzero(self) -> Iterable[tuple[int, int]]:
        for j, row in enumerate(self.entries):
            for i, v in enumerate(row):
                if v:
                    yield (i, j)

    def as_lists(self) -> list[list[int]]:
        """Rows from j = 2n+1 down to 0, columns ascending (the usual picture)."""
        return [list(self.entries[j]) for j in range(self.nrows - 1, -1, -1)]

    def render(self) -> str:
        width = max(2, max(len(str(v)) for r in self.entries for v in r))
        lab = len(str(self.nrows - 1))
        lines = []
        for j in range(self.nrows - 1, -1, -1):
            cells = " ".join(str(v).rjust(width) for v in self.entries[j])
            lines.append(f"{str(j).rjust(lab)} | {cells}")
        lines.append(" " * lab + " +-" + "-" * ((width + 1) * self.ncols - 1))
        lines.append(" " * lab + "   " + " ".join(str(i).rjust(width) for i in range(self.ncols)))
        return "\n".join(lines)


E2Table = PageTable


@dataclass(frozen=True)
class DifferentialAssignment:
    page: int
    source: tuple[int, int]
    rank: int | None
    provenance: Provenance

    @property
    def target(self) -> tuple[int, int]:
        i, j = self.source
        return (i + self.page, j - self.page + 1)

    def label(self) -> str:
        i, j = self.source
        return f"d{self.page}^({i},{j})"


@dataclass(frozen=True)
class SingleQuadric:
    n: int
    rho: int


@dataclass(frozen=True)
class Constraints:
    """Filters on candidate E_inf pages.

    ``nonempty`` requires b0(C) >= 1; ``None`` means "on for pencils with
    n >= 2, off otherwise". ``structural`` adds the convergence, dimension and
    restriction-rank checks on top of the column-0 and nonnegativity tests.
    """

    nonempty: bool | None = None
    structural: bool = True

    def nonempty_for(self, source) -> bool:
        if self.nonempty is not None:
            return self.nonempty
        return isinstance(source, PencilProfile) and source.n >= 2


@dataclass
class BettiReport:
    n: int
    betti_R: list[int]
    betti_C: list[int]
    iC_even_ranks: list[int]
    status: Status
    candidates: list[tuple[list[int], list[int]]]
    e2_snapshot: PageTable
    e_inf_snapshot: PageTable
    pages: list[PageTable] = field(default_factory=list)
    assignments: list[DifferentialAssignment] = field(default_factory=list)
    distinguishing: list[str] = field(default_factory=list)
    branches_explored: int = 0


# --- E2 pages ---

def e2_single(n: int, rho: int) -> PageTable:
    if rho == 0:
        raise ValueError("rank 0 quadric: C is all of CP^n")
    if not 1 <= rho <= n + 1:
        raise ValueError(f"rank {rho} outside 1..{n + 1}")
    vals = {(0, j): 1 for j in range(rho, 2 * n + 2)}
    vals.update({(2, j): 1 for j in range(rho)})
    return PageTable.from_dict(n, 3, vals)


def e2_pencil(pp: PencilProfile) -> PageTable:
    n, mu, nu = pp.n, pp.mu, pp.nu
    vals = {(0, j): 1 for j in range(mu, 2 * n + 2)}
    for j in range(nu, mu):
        s = pp.sigma_at(j + 1)
        vals[(2, j)] = s
        vals[(3, j)] = s - 1
    vals.update({(4, j): 1 for j in range(nu)})
    return PageTable.from_dict(n, 5, vals)


# --- differentials ---

def d2_ranks(pp: PencilProfile) -> list[DifferentialAssignment]:
    """Page-2 differentials of a pencil with nonzero source.

    Formula ranks: d2^{2,nu} is x -> nu * sum(x), rank nu mod 2; when the
    determinant is not identically zero, d2^{0,n+1} is 1 -> (m_k mod 2), of
    rank 1 iff some root has odd multiplicity. d2^{0,mu} with mu < n+1 has no
    formula and is returned with rank None and Enumerated provenance.
    """
    table = e2_pencil(pp)
    out = []
    for (i, j) in table.nonzero():
        tgt = (i + 2, j - 1)
        if not table[tgt]:
            out.append(DifferentialAssignment(2, (i, j), 0, Provenance.FORCED_ZERO))
        elif (i, j) == (2, pp.nu):
            out.append(DifferentialAssignment(2, (i, j), pp.nu % 2, Provenance.FORMULA))
        elif (i, j) == (0, pp.mu) and pp.mu == pp.n + 1:
            out.append(DifferentialAssignment(2, (i, j), int(pp.exists_odd_multiplicity),
                                              Provenance.FORMULA))
        else:
            out.append(DifferentialAssignment(2, (i, j), None, Provenance.ENUMERATED))
    _check_d2_composition(pp, out)
    return sorted(out, key=lambda d: (d.source[0], -d.source[1]))


def _check_d2_composition(pp: PencilProfile, ds: Sequence[DifferentialAssignment]) -> None:
    # d2^{2,n} o d2^{0,n+1}(1) = nu * sum(m_k) mod 2 must vanish
    ranks = {d.source: d.rank for d in ds if d.provenance is Provenance.FORMULA}
    first, second = ranks.get((0, pp.n + 1)), ranks.get((2, pp.n))
    if first and second and sum(pp.multiplicities) % 2:
        raise InconsistentProfile("d2 formulas force a nonzero composition")


def d2_single(n: int, rho: int) -> list[DifferentialAssignment]:
    """The only possibly nonzero d2 of one quadric: rank = rho mod 2 (w1 parity)."""
    table = e2_single(n, rho)
    out = []
    for (i, j) in table.nonzero():
        if (i, j) == (0, rho) and table[2, rho - 1]:
            out.append(DifferentialAssignment(2, (i, j), rho % 2, Provenance.FORMULA))
        else:
            out.append(DifferentialAssignment(2, (i, j), 0, Provenance.FORCED_ZERO))
    return out


def _rank_bounds_ok(table: PageTable, page: int, ranks: dict) -> bool:
    load: dict = {}
    for (i, j), r in ranks.items():
        tgt = (i + page, j - page + 1)
        if r < 0 or r > min(table[i, j], table[tgt]):
            return False
        load[(i, j)] = load.get((i, j), 0) + r
        load[tgt] = load.get(tgt, 0) + r
    return all(v <= table[ij] for ij, v in load.items())


def turn_page(table: PageTable, page: int, assignments: Iterable[DifferentialAssignment]) -> PageTable:
    """E_{r+1} dimensions from E_r and the ranks of the page-r differentials."""
    ranks = {}
    for d in assignments:
        if d.page != page:
            raise ValueError(f"{d.label()} does not belong to page {page}")
        if d.rank is None:
            raise ValueError(f"{d.label()} has no rank assigned")
        if d.rank:
            ranks[d.source] = d.rank
    if not _rank_bounds_ok(table, page, ranks):
        raise ValueError(f"differential ranks on page {page} violate dimension bounds")
    grid = [list(r) for r in table.entries]
    for (i, j), r in ranks.items():
        ti, tj = i + page, j - page + 1
        grid[j][i] -= r
        grid[tj][ti] -= r
    return PageTable(table.n, table.ncols, tuple(tuple(r) for r in grid))


def _page_differentials(table: PageTable, page: int, known: dict) -> tuple[list, list]:
    """Split page-r differentials into fixed assignments and unknown sources."""
    fixed, unknown = [], []
    for (i, j) in table.nonzero():
        tgt = (i + page, j - page + 1)
        if not table[tgt]:
            continue
        if known.get((i, j)) is not None:
            fixed.append(DifferentialAssignment(page, (i, j), known[(i, j)], Provenance.FORMULA))
        else:
            unknown.append((i, j))
    return fixed, unknown


# --- Betti bookkeeping and E_inf constraints ---

def betti_R_from(table: PageTable) -> list[int]:
    top = 2 * table.n + 1
    out = [0] * (top + 1)
    for (i, j) in table.nonzero():
        k = top - (i + j)
        if 0 <= k <= top:
            out[k] += table[i, j]
    return out


def alternating_sums(betti_R: Sequence[int]) -> list[int]:
    """b_j(C) = sum_k (-1)^k b_{j-k}(R) for every j in range(len(betti_R))."""
    return [sum((-1) ** k * betti_R[j - k] for k in range(j + 1)) for j in range(len(betti_R))]


def betti_C_from_R(betti_R: Sequence[int]) -> list[int]:
    return alternating_sums(betti_R)[:-1]


def iC_even_ranks_from(table: PageTable) -> list[int]:
    top = 2 * table.n + 1
    return [table[0, top - 2 * k] for k in range(table.n + 1)]


def constraint_failures(table: PageTable, nonempty: bool, structural: bool = True) -> list[str]:
    """Names of the E_inf constraints the page violates (empty list: admissible)."""
    n = table.n
    top = 2 * n + 1
    failed = []
    if structural and any(i + j > top for (i, j) in table.nonzero()):
        failed.append("convergence")
    col0 = table.column(0)
    block = 0
    while block <= top and col0[top - block] == 1:
        block += 1
    if any(col0[: top + 1 - block]) or block % 2:
        failed.append("column0")
    bR = betti_R_from(table)
    sums = alternating_sums(bR)
    bC = sums[:-1]
    if any(b < 0 for b in sums):
        failed.append("nonnegative")
    if structural:
        # C is a proper algebraic subset: no homology above real dimension 2n-2
        if any(sums[j] for j in range(max(2 * n - 1, 0), top + 1)):
            failed.append("dimension")
        iC = iC_even_ranks_from(table)
        if (iC[0] == 1) != (bC[0] >= 1) or any(r > bC[2 * k] for k, r in enumerate(iC)):
            failed.append("restriction")
    if nonempty and bC[0] < 1:
        failed.append("nonempty")
    return failed


# --- solver ---

@dataclass(frozen=True)
class _Branch:
    pages: tuple
    assignments: tuple


def _formula_ranks(source) -> dict:
    if isinstance(source, PencilProfile):
        ds = d2_ranks(source)
    else:
        ds = d2_single(source.n, source.rho)
    return {d.source: d.rank for d in ds if d.provenance is Provenance.FORMULA}


def _explore(source) -> tuple[list[_Branch], int]:
    if isinstance(source, PencilProfile):
        e2 = e2_pencil(source)
    else:
        e2 = e2_single(source.n, source.rho)
    ncols = e2.ncols
    known2 = _formula_ranks(source)
    branches = [_Branch((e2,), ())]
    for page in range(2, ncols):
        nxt = []
        for br in branches:
            table = br.pages[-1]
            fixed, unknown = _page_differentials(table, page, known2 if page == 2 else {})
            ranges = [range(min(table[s], table[s[0] + page, s[1] - page + 1]) + 1) for s in unknown]
            for combo in itertools.product(*ranges):
                ds = list(fixed) + [DifferentialAssignment(page, s, r, Provenance.ENUMERATED)
                                    for s, r in zip(unknown, combo)]
                ranks = {d.source: d.rank for d in ds if d.rank}
                if not _rank_bounds_ok(table, page, ranks):
                    continue
                new = turn_page(table, page, ds)
                nxt.append(_Branch(br.pages + (new,), br.assignments + tuple(ds)))
        branches = nxt
    return branches, len(branches)


def solve(source: Union[PencilProfile, SingleQuadric], constraints: Constraints | None = None) -> BettiReport:
    """Run the spectral sequence to E_inf and report Betti numbers of R and C."""
    constraints = constraints or Constraints()
    nonempty = constraints.nonempty_for(source)
    branches, explored = _explore(source)
    survivors = [b for b in branches
                 if not constraint_failures(b.pages[-1], nonempty, constraints.structural)]
    if not survivors:
        raise InconsistentProfile("inconsistent profile: no branch satisfies the E_inf constraints")

    def key(b: _Branch):
        bR = betti_R_from(b.pages[-1])
        return (bR, betti_C_from_R(bR), [(d.page, d.source, d.rank) for d in b.assignments])

    survivors.sort(key=key)
    outcomes = sorted({(tuple(k[0]), tuple(k[1])) for k in map(key, survivors)})
    chosen = survivors[0]
    e_inf = chosen.pages[-1]
    bR = betti_R_from(e_inf)
    status = Status.RESOLVED if len(outcomes) == 1 else Status.AMBIGUOUS
    distinguishing = []
    if status is Status.AMBIGUOUS:
        seen: dict = {}
        for b in survivors:
            for d in b.assignments:
                if d.provenance is Provenance.ENUMERATED:
                    seen.setdefault((d.page, d.source), set()).add(d.rank)
        # unknowns absent from some branch count as rank 0 there
        for b in survivors:
            present = {(d.page, d.source) for d in b.assignments}
            for k in seen:
                if k not in present:
                    seen[k].add(0)
        distinguishing = [DifferentialAssignment(p, s, None, Provenance.ENUMERATED).label()
                          for (p, s), rs in sorted(seen.items()) if len(rs) > 1]
    return BettiReport(
        n=e_inf.n,
        betti_R=bR,
        betti_C=betti_C_from_R(bR),
        iC_even_ranks=iC_even_ranks_from(e_inf),
        status=status,
        candidates=[(list(r), list(c)) for r, c in outcomes] if status is Status.AMBIGUOUS else [],
        e2_snapshot=chosen.pages[0],
        e_inf_snapshot=e_inf,
        pages=list(chosen.pages),
        assignments=list(chosen.assignments),
        distinguishing=distinguishing,
        branches_explored=explored,
    )


# --- closed forms ---

def closed_form_single(n: int, rho: int) -> list[int]:
    """Betti numbers of a single quadric of rank rho in CP^n."""
    if not 1 <= rho <= n + 1:
        raise ValueError(f"rank {rho} outside 1..{n + 1}")
    b = [1 if j % 2 == 0 and j <= 2 * n - 2 else 0 for j in range(2 * n + 1)]
    if rho % 2 == 0:
        b[2 * n - rho] = 2
    return b


def closed_form_complete_intersection(n: int) -> list[int]:
    """Betti numbers of a smooth complete intersection of two quadrics in CP^n."""
    if n < 2:
        raise ValueError("complete intersections of two quadrics need n >= 2")
    b = [1 if j % 2 == 0 and j <= 2 * n - 4 else 0 for j in range(2 * n + 1)]
    b[n - 2] = n + 2 if n % 2 == 0 else n - 1
    return b


def projective_space_betti(n: int) -> list[int]:
    return [1 if j % 2 == 0 else 0 for j in range(2 * n + 1)]


# --- pipeline ---

@dataclass
class Analysis:
    """Outcome of routing a list of Gram matrices through the right path."""

    n: int
    route: str  # "pencil", "single" or "ambient"
    report: BettiReport | None
    profile: PencilProfile | None = None
    single: SingleQuadric | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def classification(self) -> str:
        if self.route == "pencil":
            return self.profile.classification.value
        return "SingleQuadric" if self.route == "single" else "AmbientSpace"


def ambient_report(n: int) -> BettiReport:
    """C = CP^n: every equation vanishes identically; R = RP^{2n+1}."""
    table = PageTable.from_dict(n, 3, {(0, j): 1 for j in range(2 * n + 2)})
    bR = betti_R_from(table)
    return BettiReport(n, bR, betti_C_from_R(bR), [1] * (n + 1), Status.RESOLVED, [],
                       table, table, [table])


def analyze(n: int, quadrics: Sequence[ComplexSymMatrix], constraints: Constraints | None = None) -> Analysis:
    if not 1 <= len(quadrics) <= 2:
        raise ValueError("expected one or two quadrics")
    if any(q.size != n + 1 for q in quadrics):
        raise ValueError("quadric size does not match n")
    nonzero = [q for q in quadrics if not q.is_zero()]
    notes = []
    if len(nonzero) < len(quadrics):
        notes.append("dropped identically zero quadric")
    if not nonzero:
        return Analysis(n, "ambient", ambient_report(n), notes=notes + ["C is all of CP^n"])
    if len(nonzero) == 2:
        p = Pencil(n, nonzero[0], nonzero[1])
        if not p.is_dependent():
            pp = profile(p)
            return Analysis(n, "pencil", solve(pp, constraints), profile=pp, notes=notes)
        notes.append("quadrics are proportional; rerouted to the single-quadric path")
    sq = SingleQuadric(n, rank_complex(nonzero[0]))
    return Analysis(n, "single", solve(sq, constraints), single=sq, notes=notes)


__all__ = [
    "Analysis", "BettiReport", "Classification", "Constraints", "DifferentialAssignment",
    "E2Table", "InconsistentProfile", "PageTable", "Provenance", "SingleQuadric", "Status",
    "alternating_sums", "analyze", "betti_C_from_R", "betti_R_from", "closed_form_complete_intersection",
    "closed_form_single", "constraint_failures", "d2_ranks", "d2_single", "e2_pencil", "e2_single",
    "solve", "turn_page",
]
