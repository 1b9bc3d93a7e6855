"""Quadric parsing, input specs, report serialization and the run pipeline."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactnum import ZERO, GaussianRational, format_gaussian, gr
from .specseq import (
    Analysis,
    BettiReport,
    Constraints,
    PageTable,
    Status,
    analyze,
)
from .symlin import MAX_N, ComplexSymMatrix, coefficients_from_gram, gram_from_coefficients

SCHEMA_VERSION = 1


class QuadricParseError(ValueError):
    """Parse failure; ``kind`` is one of the fixed error phrases."""

    NOT_QUADRATIC = "not a quadratic form"
    OUT_OF_RANGE = "variable out of range"
    BAD_COEFFICIENT = "bad coefficient"
    ZERO_FORM = "zero form"

    def __init__(self, kind: str, detail: str = ""):
        self.kind = kind
        super().__init__(f"{kind}: {detail}" if detail else kind)


# --- tokenizer / recursive-descent parser over sparse polynomials ---

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<var>z\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")

_MAX_DEGREE = 8

Poly = dict  # monomial (sorted tuple of variable indices) -> GaussianRational


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT,
                                    f"unexpected character {text[pos:].strip()[:1]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def _padd(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, ZERO) + (v if sign > 0 else -v)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = tuple(sorted(k1 + k2))
            if len(k) > _MAX_DEGREE:
                raise QuadricParseError(QuadricParseError.NOT_QUADRATIC, "degree too large")
            s = out.get(k, ZERO) + v1 * v2
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _const(c) -> Poly:
    c = gr(c)
    return {(): c} if c else {}


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.i != len(self.toks):
            raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT,
                                    f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            p = _padd(p, self.term(), sign)
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                p = _pmul(p, self.unary())
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.unary()
                if set(d) != {()}:
                    raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT,
                                            "division by a non-constant or zero")
                p = _pmul(p, _const(d[()].inverse()))
            elif kind in ("num", "var", "name") or (kind, val) == ("op", "("):
                # juxtaposition, e.g. 2z0 or 3(z0 + z1)
                p = _pmul(p, self.power())
            else:
                return p

    def unary(self) -> Poly:
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return _pmul(_const(-1), self.unary())
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, "exponent must be a natural number")
            e = int(val)
            if e > _MAX_DEGREE:
                raise QuadricParseError(QuadricParseError.NOT_QUADRATIC, "degree too large")
            out = _const(1)
            for _ in range(e):
                out = _pmul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            q = Fraction(val)
            if self.peek() == ("name", "i"):
                self.take()
                return _const(GaussianRational(0, q))
            return _const(q)
        if kind == "name":
            if val == "i":
                return _const(GaussianRational(0, 1))
            m = re.fullmatch(r"(\d+(?:\.\d+)?)i", val)
            if m:
                return _const(GaussianRational(0, Fraction(m.group(1))))
            raise QuadricParseError(QuadricParseError.OUT_OF_RANGE, f"unknown variable {val!r}")
        if kind == "var":
            idx = int(val[1:])
            if idx > self.n:
                raise QuadricParseError(QuadricParseError.OUT_OF_RANGE, f"{val} with n = {self.n}")
            return {(idx,): GaussianRational(1)}
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, "unbalanced parenthesis")
            return p
        raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT,
                                "unexpected end of input" if kind is None else f"unexpected {val!r}")


def parse_polynomial(text: str, n: int) -> Poly:
    if not text or not text.strip():
        raise QuadricParseError(QuadricParseError.ZERO_FORM, "empty input")
    return _Parser(text, n).parse()


def parse_gaussian(text: str) -> GaussianRational:
    """A constant Gaussian-rational literal such as ``-1/2``, ``2-3i``, ``(1+i)/2``."""
    try:
        p = _Parser(text, -1).parse() if text.strip() else None
    except QuadricParseError as e:
        raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, str(e)) from None
    if p is None or any(k != () for k in p):
        raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, f"{text!r} is not a constant")
    return p.get((), ZERO)


def parse_quadric(text: str, n: int) -> ComplexSymMatrix:
    """Gram matrix of a quadratic form in z0..zn given as text."""
    p = parse_polynomial(text, n)
    bad = [k for k in p if len(k) != 2]
    if bad:
        raise QuadricParseError(QuadricParseError.NOT_QUADRATIC, f"term of degree {len(bad[0])}")
    if not p:
        raise QuadricParseError(QuadricParseError.ZERO_FORM, "all terms cancel")
    return gram_from_coefficients(n, p)


def format_quadric(Q: ComplexSymMatrix) -> str:
    """Polynomial text for a Gram matrix; ``parse_quadric`` inverts it."""
    parts = []
    for (i, j), c in coefficients_from_gram(Q).items():
        mono = f"z{i}^2" if i == j else f"z{i}*z{j}"
        if c == 1:
            term = mono
        elif c == -1:
            term = "-" + mono
        elif c.re and c.im:
            term = f"({format_gaussian(c)})*{mono}"
        else:
            term = f"{format_gaussian(c)}*{mono}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def parse_matrix(rows: Any, n: int) -> ComplexSymMatrix:
    """Matrix input: entries are literal strings or ``[re, im]`` pairs of rational strings."""
    if not isinstance(rows, list) or len(rows) != n + 1:
        raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, f"matrix must have {n + 1} rows")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n + 1:
            raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, f"matrix rows must have {n + 1} entries")
        out.append([_entry(x) for x in r])
    try:
        return ComplexSymMatrix(out)
    except ValueError as e:
        raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, str(e)) from None


def _entry(x) -> GaussianRational:
    if isinstance(x, bool) or isinstance(x, float):
        raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, "floating-point entries are not exact")
    if isinstance(x, int):
        return gr(x)
    if isinstance(x, str):
        return parse_gaussian(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in x):
        try:
            return GaussianRational(Fraction(x[0]), Fraction(x[1]))
        except (ValueError, ZeroDivisionError):
            raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, f"bad pair {x!r}") from None
    raise QuadricParseError(QuadricParseError.BAD_COEFFICIENT, f"bad matrix entry {x!r}")


# --- input spec ---

@dataclass
class InputSpec:
    n: int
    quadrics: list  # polynomial strings or nested lists
    format: str = "text"
    dump_pages: bool = False
    assume_nonempty: bool | None = None
    seed: int = 0
    max_n: int = MAX_N

    def validate(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise QuadricParseError(QuadricParseError.OUT_OF_RANGE, "n must be a natural number")
        if self.n > self.max_n:
            raise QuadricParseError(QuadricParseError.OUT_OF_RANGE, f"n = {self.n} exceeds --max-n {self.max_n}")
        if not 1 <= len(self.quadrics) <= 2:
            raise ValueError("expected one or two quadrics")
        if self.format not in ("json", "text"):
            raise ValueError(f"unknown format {self.format!r}")

    def matrices(self) -> list[ComplexSymMatrix]:
        self.validate()
        out = []
        for q in self.quadrics:
            if isinstance(q, str):
                try:
                    out.append(parse_quadric(q, self.n))
                except QuadricParseError as e:
                    if e.kind != QuadricParseError.ZERO_FORM:
                        raise
                    out.append(ComplexSymMatrix.zeros(self.n + 1))
            else:
                out.append(parse_matrix(q, self.n))
        return out


def load_input(path: str) -> InputSpec:
    """Read ``{"n": ..., "quadrics": [...], ...flags}`` from a JSON file."""
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "n" not in doc or "quadrics" not in doc:
        raise ValueError("input file needs keys 'n' and 'quadrics'")
    spec = InputSpec(n=doc["n"], quadrics=list(doc["quadrics"]))
    for key in ("format", "dump_pages", "assume_nonempty", "seed", "max_n"):
        if key in doc:
            setattr(spec, key, doc[key])
    return spec


# --- serialization ---

def _bf_str(f) -> str:
    return "0" if f.is_zero else str(f)


def analysis_to_json(a: Analysis, dump_pages: bool = False) -> dict:
    r = a.report
    pp = a.profile
    if pp is not None:
        mu, nu = pp.mu, pp.nu
        sigma = {str(k): v for k, v in pp.sigma.items()}
    elif a.single is not None:
        mu = nu = a.single.rho
        sigma = {}
    else:
        mu = nu = 0
        sigma = {}
    doc = {
        "version": SCHEMA_VERSION,
        "n": a.n,
        "route": a.route,
        "classification": a.classification,
        "mu": mu,
        "nu": nu,
        "sigma": sigma,
        "det_form": _bf_str(pp.det_form) if pp is not None else None,
        "e2": r.e2_snapshot.as_lists(),
        "e_inf": r.e_inf_snapshot.as_lists(),
        "betti_R": list(r.betti_R),
        "betti_C": list(r.betti_C),
        "iC_even_ranks": list(r.iC_even_ranks),
        "status": r.status.value,
        "candidates": [{"betti_R": br, "betti_C": bc} for br, bc in r.candidates],
        "distinguishing": list(r.distinguishing),
        "notes": list(a.notes),
    }
    if dump_pages:
        doc["pages"] = [{"page": k + 2, "table": p.as_lists()} for k, p in enumerate(r.pages)]
        doc["differentials"] = [
            {"page": d.page, "source": list(d.source), "target": list(d.target),
             "rank": d.rank, "provenance": d.provenance.value}
            for d in r.assignments if d.rank
        ]
    return doc


def _table_from_lists(n: int, rows: list) -> PageTable:
    ncols = len(rows[0])
    entries = tuple(tuple(r) for r in reversed(rows))
    if len(entries) != 2 * n + 2:
        raise ValueError("table height does not match n")
    return PageTable(n, ncols, entries)


def report_from_json(doc: dict) -> BettiReport:
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report version {doc.get('version')!r}")
    n = doc["n"]
    pages = [_table_from_lists(n, p["table"]) for p in doc.get("pages", [])]
    return BettiReport(
        n=n,
        betti_R=list(doc["betti_R"]),
        betti_C=list(doc["betti_C"]),
        iC_even_ranks=list(doc["iC_even_ranks"]),
        status=Status(doc["status"]),
        candidates=[(list(c["betti_R"]), list(c["betti_C"])) for c in doc["candidates"]],
        e2_snapshot=_table_from_lists(n, doc["e2"]),
        e_inf_snapshot=_table_from_lists(n, doc["e_inf"]),
        pages=pages,
        distinguishing=list(doc.get("distinguishing", [])),
    )


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def analysis_to_text(a: Analysis, dump_pages: bool = False) -> str:
    r = a.report
    lines = [f"n = {a.n}   route: {a.route}   classification: {a.classification}"]
    if a.profile is not None:
        pp = a.profile
        lines.append(f"det form: {_bf_str(pp.det_form)}")
        lines.append(f"mu = {pp.mu}   nu = {pp.nu}   sigma = "
                     + ", ".join(f"s{k}={v}" for k, v in pp.sigma.items()))
    elif a.single is not None:
        lines.append(f"rank = {a.single.rho}")
    for note in a.notes:
        lines.append(f"note: {note}")
    if dump_pages:
        for k, p in enumerate(r.pages):
            lines += ["", f"E_{k + 2}:", p.render()]
        ds = [d for d in r.assignments if d.rank]
        if ds:
            lines += ["", "nonzero differentials:"]
            lines += [f"  {d.label()} rank {d.rank} [{d.provenance.value}]" for d in ds]
    else:
        lines += ["", "E_2:", r.e2_snapshot.render(), "", "E_inf:", r.e_inf_snapshot.render()]
    lines += [
        "",
        f"betti(R) = {_vec(r.betti_R)}",
        f"betti(C) = {_vec(r.betti_C)}",
        f"rk(i_C^*)_(2k) = {_vec(r.iC_even_ranks)}",
        f"status: {r.status.value}",
    ]
    if r.status is Status.AMBIGUOUS:
        lines.append("candidates:")
        lines += [f"  betti(R) = {_vec(br)}   betti(C) = {_vec(bc)}" for br, bc in r.candidates]
        lines.append("undetermined differentials: " + ", ".join(r.distinguishing))
    return "\n".join(lines)


def profile_to_json(a: Analysis) -> dict:
    doc = analysis_to_json(a)
    keep = ("version", "n", "route", "classification", "mu", "nu", "sigma", "det_form", "notes")
    out = {k: doc[k] for k in keep}
    if a.profile is not None:
        out["sqfree_decomp"] = [[_bf_str(g), i] for g, i in a.profile.sqfree_decomp]
        out["exists_odd_multiplicity"] = a.profile.exists_odd_multiplicity
    return out


@dataclass
class RunResult:
    output: str
    exit_code: int
    document: dict = field(default_factory=dict)
    analysis: Analysis | None = None


def exit_code_for(report: BettiReport) -> int:
    return 0 if report.status is Status.RESOLVED else 2


def run(spec: InputSpec) -> RunResult:
    """Full pipeline: parse, route, solve, serialize."""
    mats = spec.matrices()
    a = analyze(spec.n, mats, Constraints(nonempty=spec.assume_nonempty))
    doc = analysis_to_json(a, spec.dump_pages)
    if spec.format == "json":
        out = json.dumps(doc, indent=2)
    else:
        out = analysis_to_text(a, spec.dump_pages)
    return RunResult(out, exit_code_for(a.report), doc, a)
