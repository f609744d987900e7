"""Four-index Betti tables of H(B) and H_r(B), Poincare polynomials, and checks.

A Betti table maps (p, q, j, k) to beta(p, q, j, k): p is the homological
degree, q the internal (first) grading of the free generator, and (j, k)
the stratum of the homology.  The Poincare polynomial is kept exactly as a
numerator in x, y, a, b over a power of (1 - y^2).
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .braid import BraidWord, ClosedBraidDiagram, close
from .exactalg import LaurentPoly
from .grmodule import hilbert_series
from .krcomplex import TriGradedHomology, middle_homology, reduced_homology
from .resolve import ZERO_MODULE, betti_table

PVARS = ("x", "y", "a", "b")


def binom_norm(n: int, k: int) -> int:
    if 0 <= k <= n:
        return comb(n, k)
    if n == -1 and k == 0:
        return 1
    return 0


class BettiTable:
    """(p, q, j, k) -> positive integer, for an m-component link."""

    def __init__(self, entries: dict, m: int, reduced: bool = False):
        self.entries = {tuple(k): int(v) for k, v in entries.items() if v}
        self.m = m
        self.reduced = reduced

    def __getitem__(self, key) -> int:
        return self.entries.get(tuple(key), 0)

    def __eq__(self, other):
        return (isinstance(other, BettiTable) and self.entries == other.entries
                and self.m == other.m and self.reduced == other.reduced)

    def __repr__(self):
        kind = "reduced " if self.reduced else ""
        return f"BettiTable({kind}m={self.m}, {self.rows()})"

    def rows(self) -> list:
        return [(p, q, j, k, v) for (p, q, j, k), v in sorted(self.entries.items())]

    @property
    def pd(self):
        ps = [p for (p, _, _, _) in self.entries]
        return max(ps) if ps else ZERO_MODULE

    def check_invariants(self) -> None:
        parity = 0 if self.reduced else 1
        nvars = self.m - 1 if self.reduced else self.m
        for (p, q, j, k) in self.entries:
            if (k - j) % 2:
                raise AssertionError(f"odd k - j at {(p, q, j, k)}")
            if (q + j) % 2 != parity:
                raise AssertionError(f"unexpected parity of q + j at {(p, q, j, k)}")
            if p > nvars:
                raise AssertionError(f"homological degree beyond the variable count at {(p, q, j, k)}")

    def shifted_q(self, dq: int, reduced: bool) -> "BettiTable":
        return BettiTable({(p, q + dq, j, k): v for (p, q, j, k), v in self.entries.items()},
                          self.m, reduced)

    def to_csv(self) -> str:
        lines = ["p,q,j,k,value"]
        lines += [f"{p},{q},{j},{k},{v}" for p, q, j, k, v in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> list:
        return [{"p": p, "q": q, "j": j, "k": k, "value": v} for p, q, j, k, v in self.rows()]


def _stratum_betti(M):
    return betti_table(M)


def table_from_homology(H: TriGradedHomology, jobs: int = 1) -> BettiTable:
    items = list(H.items())
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            tables = list(ex.map(_stratum_betti, [M for _, M in items]))
    else:
        tables = [betti_table(M) for _, M in items]
    entries = {}
    for ((j, k), _), tab in zip(items, tables):
        for (p, q), v in tab.items():
            entries[(p, q, j, k)] = v
    T = BettiTable(entries, H.m, H.reduced)
    T.check_invariants()
    return T


def betti_numbers(D: ClosedBraidDiagram, reduced: bool = False, jobs: int = 1) -> BettiTable:
    return table_from_homology(middle_homology(D, reduced), jobs)


@dataclass
class LinkData:
    """Everything computed for one closed braid."""

    diagram: ClosedBraidDiagram
    homology: TriGradedHomology
    reduced_homology: TriGradedHomology
    table: BettiTable
    table_reduced: BettiTable
    extra: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.diagram.n_components

    @property
    def pd(self):
        return self.table.pd


def analyze(w: BraidWord | ClosedBraidDiagram, jobs: int = 1) -> LinkData:
    D = w if isinstance(w, ClosedBraidDiagram) else close(w)
    H = middle_homology(D)
    Hr = middle_homology(D, reduced=True)
    return LinkData(D, H, Hr, table_from_homology(H, jobs), table_from_homology(Hr, jobs))


# ---------------------------------------------------------------------------
# Poincare polynomials

@dataclass(frozen=True)
class PoincarePolynomial:
    numerator: LaurentPoly
    denominator_power: int

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        return PoincarePolynomial(self.numerator * other.numerator,
                                  self.denominator_power + other.denominator_power)

    def times_monomial(self, exponents: dict, c=1) -> "PoincarePolynomial":
        mono = LaurentPoly.monomial(PVARS, exponents, c)
        return PoincarePolynomial(self.numerator * mono, self.denominator_power)

    @property
    def x_degree(self):
        if self.numerator.is_zero():
            return ZERO_MODULE
        return self.numerator.degree("x")

    def specialize(self, **values) -> "PoincarePolynomial":
        return PoincarePolynomial(self.numerator.substitute(values), self.denominator_power)

    def series(self, cutoff: int) -> dict:
        """Expand in y up to y^cutoff: {i: LaurentPoly in the other variables}.

        The numerator's y-exponents are split off and multiplied by the
        power series of (1 - y^2)^(-d).
        """
        num = self.numerator
        names = num.variables
        yi = names.index("y")
        rest = tuple(v for v in names if v != "y")
        by_y: dict = {}
        for e, c in num.terms.items():
            key = e[:yi] + e[yi + 1:]
            by_y.setdefault(e[yi], {})[key] = c
        d = self.denominator_power
        out: dict = {}
        for q, terms in by_y.items():
            part = LaurentPoly(rest, terms)
            i = 0
            while q + 2 * i <= cutoff:
                coeff = binom_norm(i + d - 1, i)
                if coeff:
                    deg = q + 2 * i
                    out[deg] = out.get(deg, LaurentPoly(rest)) + part.scale(coeff)
                if d == 0:
                    break
                i += 1
        return {k: v for k, v in sorted(out.items()) if not v.is_zero()}

    def to_json(self) -> dict:
        return {"numerator": str(self.numerator), "denominator_power": self.denominator_power}


def poincare(T: BettiTable) -> PoincarePolynomial:
    terms = {}
    for (p, q, j, k), v in T.entries.items():
        if (k - j) % 2:
            raise ValueError(f"odd k - j on the support at {(p, q, j, k)}")
        e = (p, q, j, (k - j) // 2)
        terms[e] = terms.get(e, 0) + v
    return PoincarePolynomial(LaurentPoly(PVARS, terms), T.m - 1 if T.reduced else T.m)


# ---------------------------------------------------------------------------
# checks

@dataclass
class Report:
    ok: bool
    messages: list = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.messages.append(msg)

    def __bool__(self):
        return self.ok


def homology_series(H: TriGradedHomology, cutoff: int) -> dict:
    """{i: sum_{j,k} dim H^{i,j,k} a^j b^((k-j)/2)} up to y^cutoff."""
    rest = ("a", "b")
    out: dict = {}
    for (j, k), M in H.items():
        for i, dim in hilbert_series(M, cutoff).items():
            if dim:
                mono = LaurentPoly.monomial(rest, {"a": j, "b": (k - j) // 2}, dim)
                out[i] = out.get(i, LaurentPoly(rest)) + mono
    return {k: v for k, v in sorted(out.items()) if not v.is_zero()}


def _compare_series(left: dict, right: dict, report: Report, label: str, upto: int) -> None:
    keys = sorted(set(left) | set(right))
    for i in keys:
        if i > upto:
            continue
        lv, rv = left.get(i), right.get(i)
        if lv is None or rv is None or lv != rv:
            report.fail(f"{label}: coefficient of y^{i} differs ({lv} vs {rv})")
            return


def euler_check(data: LinkData, cutoff: int = 30) -> Report:
    """Poincare polynomials at x = -1 against graded dimensions, plus the bridge identity."""
    rep = Report(True)
    P = poincare(data.table).specialize(x=-1)
    Pr = poincare(data.table_reduced).specialize(x=-1)
    sP = P.series(cutoff)
    sPr = Pr.series(cutoff)
    _compare_series(sP, homology_series(data.homology, cutoff), rep, "unreduced", cutoff)
    _compare_series(sPr, homology_series(data.reduced_homology, cutoff), rep, "reduced", cutoff)
    # (y - 1/y) P(-1, y, a, -1) = -P_r(-1, y, a, -1), compared below the cutoff
    bP = {i: p.substitute({"b": -1}) for i, p in sP.items()}
    bPr = {i: p.substitute({"b": -1}) for i, p in sPr.items()}
    lhs: dict = {}
    for i, p in bP.items():
        lhs[i + 1] = lhs.get(i + 1, LaurentPoly(p.variables)) + p
        lhs[i - 1] = lhs.get(i - 1, LaurentPoly(p.variables)) - p
    lhs = {i: p for i, p in lhs.items() if not p.is_zero()}
    rhs = {i: -p for i, p in bPr.items()}
    _compare_series(lhs, rhs, rep, "bridge identity", cutoff - 1)
    return rep


def hilbert_identity_check(T: BettiTable, H: TriGradedHomology, j: int, k: int,
                           T_max: int = 10) -> Report:
    """dim H^{2T+1-j,j,k} against the alternating binomial sum over the Betti numbers."""
    rep = Report(True)
    m = T.m
    M = H[(j, k)]
    top = 2 * T_max + 1 - j
    dims = hilbert_series(M, top, start=min(M.gen_degrees + [top]))
    for t in range(T_max + 1):
        i = 2 * t + 1 - j
        lhs = dims.get(i, 0)
        rhs = 0
        for (p, q, jj, kk), v in T.entries.items():
            if (jj, kk) != (j, k):
                continue
            rhs += (-1) ** p * v * binom_norm(t + m - (j + q + 1) // 2, t - (j + q - 1) // 2)
        if lhs != rhs:
            rep.fail(f"stratum {(j, k)}, T={t}: dimension {lhs} vs Betti sum {rhs}")
    return rep


def split_obstruction(T: BettiTable, n: int) -> str:
    """'obstructed' if pd > m - n (the link cannot be n-split), else 'consistent'."""
    if T.reduced:
        raise ValueError("split obstruction uses the unreduced table")
    if not 1 <= n <= T.m:
        raise ValueError(f"n must lie in 1..{T.m}, got {n}")
    pd = T.pd
    if pd is ZERO_MODULE:
        return "consistent"
    return "obstructed" if pd > T.m - n else "consistent"


def split_verdicts(T: BettiTable) -> dict:
    return {n: split_obstruction(T, n) for n in range(1, T.m + 1)}


def quotient_table(data: LinkData, jobs: int = 1) -> BettiTable:
    """Reduced table computed through H / X1 H instead of the reduced complex."""
    return table_from_homology(reduced_homology(data.homology), jobs)
