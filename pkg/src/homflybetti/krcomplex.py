"""The middle complex of a positive closed braid and its iterated homology.

Each positive crossing contributes a commuting square of rank-one free
modules over the edge ring.  With u = X(in_b) - X(out_a) and
v = X(in_a) - X(out_a), the square has corners (horizontal, vertical)::

    (-2, 0) {0,-2,0}   --u-->   (0, 0) {0,0,0}
       ^ v                          ^ 1
    (-2,-2) {2,-2,-2}  --u*v-->  (0,-2) {0,0,-2}

The complex of a braid is the tensor product of its crossing squares over
the edge ring.  A summand is a choice of corner per crossing; d+ moves one
crossing from horizontal -2 to 0, and d_v moves one crossing from vertical
-2 to 0.  A component acting on crossing t is signed by (-1) to the number
of earlier crossings sitting at -2 in the same direction, which makes both
differentials square to zero while the squares commute.

Homology is taken with respect to d+ first, then d_v, and finally shifted by
{-w+b, w+b-1, w-b+1} (reduced: {-w+b-1, w+b-1, w-b+1}).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .braid import ClosedBraidDiagram, is_positive
from .grmodule import (ModuleMap, PresentedGradedModule, change_ring, homology,
                       induced_map, quotient_by_element)
from .polyring import (GradedFreeModule, GradedRing, HomMatrix, Polynomial,
                       apply_columns, vec_degree)


class NegativeCrossingError(ValueError):
    def __init__(self):
        super().__init__("negative crossings unsupported: only positive braid words "
                         "(all letters positive) are in scope")


# ---------------------------------------------------------------------------
# edge ring

class EdgeRing:
    """Edge variables modulo the crossing relations, as a polynomial ring.

    Gaussian elimination prefers the highest-indexed edges as dependent
    variables, so X1..Xm (one edge per component) stay free.  With
    ``reduced`` the variable X1 is additionally set to zero.
    """

    def __init__(self, D: ClosedBraidDiagram, reduced: bool = False):
        self.diagram = D
        self.reduced = reduced
        M = D.n_edges
        self.edge_names = D.edge_names()
        rows = []
        for c in D.crossings:
            r: dict = {}
            for e, s in ((c.out_a, 1), (c.out_b, 1), (c.in_a, -1), (c.in_b, -1)):
                r[e] = r.get(e, 0) + s
            rows.append({e: Fraction(v) for e, v in r.items() if v})
        self.relations = [dict(r) for r in rows]
        # reduced row echelon form, pivots on the highest index
        pivots: dict = {}
        for r in rows:
            r = dict(r)
            for p, prow in pivots.items():
                if p in r:
                    f = r.pop(p)
                    for k, v in prow.items():
                        if k == p:
                            continue
                        nv = r.get(k, 0) - f * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
            if not r:
                continue
            p = max(r)
            inv = 1 / r[p]
            row = {k: v * inv for k, v in r.items()}
            for q, qrow in pivots.items():
                if p in qrow:
                    f = qrow.pop(p)
                    for k, v in row.items():
                        if k == p:
                            continue
                        nv = qrow.get(k, 0) - f * v
                        if nv:
                            qrow[k] = nv
                        else:
                            qrow.pop(k, None)
            pivots[p] = row
        self.dependent = sorted(pivots)
        free = [e for e in range(M) if e not in pivots]
        if reduced:
            free = [e for e in free if e != 0]
        self.free_edges = free
        self.ring = GradedRing([self.edge_names[e] for e in free])
        nv = len(free)
        col = {e: i for i, e in enumerate(free)}

        def unit(i):
            ex = [0] * nv
            ex[i] = 1
            return tuple(ex)

        forms = []
        for e in range(M):
            if e in pivots:
                # X_e = - sum_{k != e} row[k] X_k
                form: dict = {}
                for k, v in pivots[e].items():
                    if k == e or k not in col:
                        continue
                    form[unit(col[k])] = form.get(unit(col[k]), 0) - v
                forms.append({k: v for k, v in form.items() if v})
            elif e in col:
                forms.append({unit(col[e]): Fraction(1)})
            else:
                forms.append({})     # X1 in the reduced ring
        self.forms = forms

    def edge(self, e: int) -> Polynomial:
        """Image of the edge variable X_{e+1} in the eliminated ring."""
        return Polynomial(self.ring, self.forms[e])

    def relation_text(self) -> list:
        out = []
        for r in self.relations:
            terms = [f"{'+' if v > 0 else '-'}{self.edge_names[e]}" for e, v in sorted(r.items())]
            out.append(" ".join(terms))
        return out


def edge_ring(D: ClosedBraidDiagram, reduced: bool = False) -> EdgeRing:
    return EdgeRing(D, reduced)


# ---------------------------------------------------------------------------
# crossing squares and the assembled complex

CORNERS = ((-2, 0), (0, 0), (-2, -2), (0, -2))
CORNER_SHIFT = {(-2, 0): (0, -2, 0), (0, 0): (0, 0, 0), (-2, -2): (2, -2, -2), (0, -2): (0, 0, -2)}


@dataclass
class CrossingSquare:
    shifts: dict            # corner -> shift triple
    top: Polynomial         # (-2,0) -> (0,0)
    bottom: Polynomial      # (-2,-2) -> (0,-2)
    left: Polynomial        # (-2,-2) -> (-2,0)
    right: Polynomial       # (0,-2) -> (0,0)

    def horizontal(self, v: int) -> Polynomial:
        return self.top if v == 0 else self.bottom

    def vertical(self, h: int) -> Polynomial:
        return self.left if h == -2 else self.right


def crossing_square(c, E: EdgeRing) -> CrossingSquare:
    if c.sign != 1:
        raise NegativeCrossingError()
    u = E.edge(c.in_b) - E.edge(c.out_a)
    v = E.edge(c.in_a) - E.edge(c.out_a)
    return CrossingSquare(dict(CORNER_SHIFT), u, u * v, v, E.ring.one())


def _state_key(state):
    hs = tuple(h for h, _ in state)
    vs = tuple(v for _, v in state)
    return (tuple(-x for x in vs), hs)


class TotalDoubleComplex:
    """Positions (j, k) with their summands and the two differentials."""

    def __init__(self, E: EdgeRing, squares: list):
        self.edge_ring = E
        self.ring = E.ring
        self.squares = squares
        n = len(squares)
        summands: dict = {}
        for state in product(CORNERS, repeat=n):
            j = sum(h for h, _ in state)
            k = sum(v for _, v in state)
            summands.setdefault((j, k), []).append(state)
        self.summands = {pos: sorted(states, key=_state_key) for pos, states in summands.items()}
        self.index = {pos: {s: i for i, s in enumerate(states)}
                      for pos, states in self.summands.items()}
        self.shifts = {pos: [self._shift(s) for s in states]
                       for pos, states in self.summands.items()}
        self.dplus = {}
        self.dv = {}
        for pos in self.summands:
            self.dplus[pos] = self._differential(pos, horizontal=True)
            self.dv[pos] = self._differential(pos, horizontal=False)

    def _shift(self, state) -> tuple:
        s = [0, 0, 0]
        for corner in state:
            for i, x in enumerate(CORNER_SHIFT[corner]):
                s[i] += x
        return tuple(s)

    def free_module(self, pos) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.shifts.get(pos, []))

    def positions(self) -> list:
        return sorted(self.summands)

    def _differential(self, pos, horizontal: bool):
        j, k = pos
        tpos = (j + 2, k) if horizontal else (j, k + 2)
        if tpos not in self.summands:
            return None
        tindex = self.index[tpos]
        cols = []
        for state in self.summands[pos]:
            col: dict = {}
            minus = 0
            for t, (h, v) in enumerate(state):
                active = h if horizontal else v
                if active == -2:
                    sq = self.squares[t]
                    if horizontal:
                        poly = sq.horizontal(v)
                        new = (0, v)
                    else:
                        poly = sq.vertical(h)
                        new = (h, 0)
                    target = state[:t] + (new,) + state[t + 1:]
                    row = tindex[target]
                    sign = -1 if minus % 2 else 1
                    for e, c in poly.terms.items():
                        key = (row, e)
                        val = col.get(key, 0) + sign * c
                        if val:
                            col[key] = val
                        else:
                            col.pop(key, None)
                    minus += 1
            cols.append(col)
        return HomMatrix(self.free_module(pos), self.free_module(tpos), cols,
                         degree=2 if horizontal else 0)

    def check(self) -> None:
        """d+^2 = 0, d_v^2 = 0, d+ d_v = d_v d+, and trigraded homogeneity."""
        for pos in self.summands:
            j, k = pos
            for name, d, off in (("d+", self.dplus, (2, 2, 0)), ("d_v", self.dv, (0, 0, 2))):
                A = d[pos]
                if A is None:
                    continue
                src, tgt = self.shifts[pos], A.target.shifts
                for col, s in zip(A.columns, src):
                    for (row, e), _ in col.items():
                        t = tgt[row]
                        if (2 * sum(e) + t[0] - s[0], t[1] - s[1], t[2] - s[2]) != off:
                            raise AssertionError(f"{name} at {pos} has the wrong degree")
            p1, p2 = self.dplus[pos], self.dplus.get((j + 2, k))
            if p1 is not None and p2 is not None and not p2.compose(p1).is_zero():
                raise AssertionError(f"d+ squared is nonzero at {pos}")
            v1, v2 = self.dv[pos], self.dv.get((j, k + 2))
            if v1 is not None and v2 is not None and not v2.compose(v1).is_zero():
                raise AssertionError(f"d_v squared is nonzero at {pos}")
            if p1 is not None and v1 is not None:
                a = self.dv[(j + 2, k)].compose(p1)
                b = self.dplus[(j, k + 2)].compose(v1)
                if [dict(c) for c in a.columns] != [dict(c) for c in b.columns]:
                    raise AssertionError(f"square at {pos} does not commute")

    def to_dict(self) -> dict:
        def mat(A):
            if A is None:
                return None
            return [[str(p) for p in row] for row in A.rows()]
        return {
            "variables": list(self.ring.names),
            "positions": [
                {"j": j, "k": k, "rank": len(self.summands[(j, k)]),
                 "shifts": [list(s) for s in self.shifts[(j, k)]],
                 "d_plus": mat(self.dplus[(j, k)]), "d_v": mat(self.dv[(j, k)])}
                for (j, k) in self.positions()],
        }


def assemble(D: ClosedBraidDiagram, reduced: bool = False) -> TotalDoubleComplex:
    if not is_positive(D.word):
        raise NegativeCrossingError()
    E = EdgeRing(D, reduced)
    squares = [crossing_square(c, E) for c in D.crossings]
    C = TotalDoubleComplex(E, squares)
    C.check()
    return C


# ---------------------------------------------------------------------------
# homology

class TriGradedHomology:
    """Strata (j, k) -> module over Q[X1..Xm] (or Q[X2..Xm] when reduced)."""

    def __init__(self, ring: GradedRing, strata: dict, m: int, reduced: bool):
        self.ring = ring
        self.strata = {pos: M for pos, M in sorted(strata.items()) if M.ngens}
        self.m = m
        self.reduced = reduced

    def __getitem__(self, pos):
        return self.strata.get(pos, PresentedGradedModule.zero(self.ring))

    def items(self):
        return self.strata.items()


def _free(ring, shifts) -> PresentedGradedModule:
    return PresentedGradedModule.free(ring, [s[0] for s in shifts])


def dplus_homology(C: TotalDoubleComplex) -> dict:
    """{(j, k): H(C, d+) at (j, k)} with representatives over the free summands."""
    mods = {pos: _free(C.ring, C.shifts[pos]) for pos in C.summands}
    out = {}
    for (j, k) in C.positions():
        mid = mods[(j, k)]
        f = C.dplus.get((j - 2, k))
        g = C.dplus[(j, k)]
        fm = ModuleMap.from_matrix(mods[(j - 2, k)], mid, f) if f is not None else None
        gm = ModuleMap.from_matrix(mid, mods[(j + 2, k)], g) if g is not None else None
        out[(j, k)] = homology(fm, gm, middle=mid)
    return out


def iterated_homology(C: TotalDoubleComplex) -> dict:
    """{(j, k): H(H(C, d+), d_v)} before any grading shift, over the edge ring."""
    Hp = dplus_homology(C)
    mods = {pos: _free(C.ring, C.shifts[pos]) for pos in C.summands}
    induced = {}
    for (j, k), H in Hp.items():
        t = (j, k + 2)
        if t in Hp:
            phi = ModuleMap.from_matrix(mods[(j, k)], mods[t], C.dv[(j, k)])
            induced[(j, k)] = induced_map(phi, H, Hp[t])
    out = {}
    for (j, k), H in Hp.items():
        f = induced.get((j, k - 2))
        g = induced.get((j, k))
        out[(j, k)] = homology(f, g, middle=H)
    return out


def _component_classes(E: EdgeRing):
    D = E.diagram
    classes = [[] for _ in range(D.n_components)]
    for e in E.free_edges:
        classes[D.edge_component[e]].append(E.edge_names[e])
    return classes


def _collapse(M: PresentedGradedModule, E: EdgeRing, target: GradedRing,
              reduced: bool) -> PresentedGradedModule:
    """Replace each edge variable by its component variable, after checking
    that same-component edges act identically (reduced: component 1 acts by 0)."""
    comp = E.diagram.edge_component
    rep = {}
    for e in E.free_edges:
        rep.setdefault(comp[e], e)
    images = []
    for e in E.free_edges:
        c = comp[e]
        x = E.edge(e).terms
        if reduced and c == 0:
            diff = x
        else:
            diff = {k: v for k, v in x.items()}
            for kk, vv in E.edge(rep[c]).terms.items():
                nv = diff.get(kk, 0) - vv
                if nv:
                    diff[kk] = nv
                else:
                    diff.pop(kk, None)
        if diff:
            for i in range(M.ngens):
                probe = {(i, kk): vv for kk, vv in diff.items()}
                if not M.contains_zero(probe):
                    raise AssertionError(
                        f"edge {E.edge_names[e]} does not act like its component "
                        f"variable on a homology generator")
        if reduced and c == 0:
            images.append({})
        else:
            ex = [0] * target.nvars
            ex[c - 1 if reduced else c] = 1
            images.append({tuple(ex): Fraction(1)})
    return change_ring(M, target, images).simplified()


def link_ring(m: int, reduced: bool = False) -> GradedRing:
    return GradedRing([f"X{i}" for i in range(2 if reduced else 1, m + 1)])


def middle_homology(D: ClosedBraidDiagram, reduced: bool = False) -> TriGradedHomology:
    """H(B) (or, with ``reduced``, H_r(B) from the reduced complex)."""
    C = assemble(D, reduced)
    raw = iterated_homology(C)
    w, b, m = D.writhe, D.strands, D.n_components
    s1 = -w + b - (1 if reduced else 0)
    sj, sk = w + b - 1, w - b + 1
    R = link_ring(m, reduced)
    strata = {}
    for (j, k), M in raw.items():
        if not M.ngens:
            continue
        N = _collapse(M, C.edge_ring, R, reduced)
        if N.ngens:
            strata[(j + sj, k + sk)] = N.shift(s1)
    return TriGradedHomology(R, strata, m, reduced)


def reduced_homology(H: TriGradedHomology) -> TriGradedHomology:
    """H / X1 H with first grading shifted by -1, over Q[X2..Xm]."""
    if H.reduced:
        raise ValueError("homology is already reduced")
    R = link_ring(H.m, reduced=True)
    images = []
    for i in range(H.m):
        if i == 0:
            images.append({})
        else:
            ex = [0] * (H.m - 1)
            ex[i - 1] = 1
            images.append({tuple(ex): Fraction(1)})
    strata = {}
    x1 = H.ring.var(0)
    for pos, M in H.items():
        Q = quotient_by_element(M, x1)
        N = change_ring(Q, R, images).simplified()
        if N.ngens:
            strata[pos] = N.shift(-1)
    return TriGradedHomology(R, strata, H.m, True)
