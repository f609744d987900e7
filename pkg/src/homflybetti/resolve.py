"""Minimal graded free resolutions, Betti tables and a Koszul-complex Tor oracle.

The resolution is built the textbook way: iterate syzygies, and after each
step cancel every constant entry of the new differential against the
previous free module.  The Koszul oracle computes Tor against the residue
field degree by degree with exact linear algebra over Q; a Groebner basis is
used only to bound the range of degrees it has to look at.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping

from .grmodule import PresentedGradedModule, cancel_unit_entries, _monomials
from .polyring import GradedFreeModule, GraphBasis, HomMatrix, leading_term, vec_degree


class _ZeroModule:
    """Projective dimension of the zero module (conventionally minus infinity)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "zero-module"

    __str__ = __repr__


ZERO_MODULE = _ZeroModule()


class FreeResolution:
    """F_l -> ... -> F_1 -> F_0 with ``degrees[p]`` the generator degrees of F_p.

    ``differentials[p-1]`` holds the columns of d_p : F_p -> F_{p-1}.
    """

    def __init__(self, ring, degrees: list, differentials: list):
        self.ring = ring
        self.degrees = degrees
        self.differentials = differentials

    @property
    def length(self) -> int:
        return len(self.differentials)

    def free_module(self, p: int) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.degrees[p])

    def matrix(self, p: int) -> HomMatrix:
        return HomMatrix(self.free_module(p), self.free_module(p - 1),
                         self.differentials[p - 1])

    def betti(self) -> dict:
        out: dict = {}
        for p, degs in enumerate(self.degrees):
            for q in degs:
                out[(p, q)] = out.get((p, q), 0) + 1
        return out

    def is_minimal(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e != zero for d in self.differentials for col in d for (_, e) in col)


def minimal_free_resolution(M: PresentedGradedModule) -> FreeResolution:
    """Minimal graded free resolution of M."""
    nv = M.ring.nvars
    alive, rels, _ = cancel_unit_entries(M.ngens, M.relations, nv)
    degrees = [[M.gen_degrees[i] for i in alive]]
    diffs: list = []
    if not degrees[0]:
        return FreeResolution(M.ring, [[]], [])
    cur = rels
    cur_deg = [vec_degree(r, degrees[0]) for r in cur]
    while cur:
        gb = GraphBasis(cur, degrees[-1], cur_deg, nv)
        syz = gb.kernel()
        alive, syz, _ = cancel_unit_entries(len(cur), syz, nv)
        cur = [cur[i] for i in alive]
        cur_deg = [cur_deg[i] for i in alive]
        if not cur:
            break
        diffs.append(cur)
        degrees.append(cur_deg)
        cur = syz
        cur_deg = [vec_degree(s, degrees[-1]) for s in syz]
    return FreeResolution(M.ring, degrees, diffs)


def betti_table(M: PresentedGradedModule) -> dict:
    """{(p, q): beta_pq} from the minimal free resolution."""
    return minimal_free_resolution(M).betti()


def projective_dimension(M_or_table):
    table = M_or_table if isinstance(M_or_table, Mapping) else betti_table(M_or_table)
    ps = [p for (p, _), v in table.items() if v]
    return max(ps) if ps else ZERO_MODULE


def depth(M: PresentedGradedModule):
    pd = projective_dimension(M)
    if pd is ZERO_MODULE:
        raise ValueError("depth of the zero module is undefined")
    return M.ring.nvars - pd


def graded_dim_from_betti(beta: Mapping, m: int, i: int) -> int:
    """dim M^i recovered from the Betti numbers (variables in degree 2)."""
    total = 0
    for (p, q), b in beta.items():
        r = i - q
        if r < 0 or r % 2:
            continue
        if m == 0:
            c = 1 if r == 0 else 0
        else:
            c = comb(r // 2 + m - 1, m - 1)
        total += (-1) ** p * b * c
    return total


# ---------------------------------------------------------------------------
# Koszul oracle

def _rref_rank(rows: list) -> int:
    """Rank of a list of sparse rows (dict column -> Fraction)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = dict(row)
        while r:
            col = min(r)
            if col in pivots:
                prow = pivots[col]
                f = r[col]
                for k, v in prow.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                inv = 1 / r[col]
                pivots[col] = {k: v * inv for k, v in r.items()}
                rank += 1
                break
    return rank


class _Quotient:
    """M_d = F_d / (relations)_d as an explicit vector space."""

    def __init__(self, M: PresentedGradedModule, d: int):
        nv = M.ring.nvars
        self.basis = []
        for pos, s in enumerate(M.gen_degrees):
            r = d - s
            if r >= 0 and r % 2 == 0:
                if nv == 0:
                    if r == 0:
                        self.basis.append((pos, ()))
                else:
                    self.basis.extend((pos, e) for e in _monomials(nv, r // 2))
        # relation subspace, kept fully reduced with pivot -> row
        self.pivots: dict = {}
        rdeg = M.relation_degrees()
        for r, rd in zip(M.relations, rdeg):
            k = d - rd
            if k < 0 or k % 2:
                continue
            monos = [()] if nv == 0 else _monomials(nv, k // 2)
            for mono in monos:
                vec = {(p, tuple(a + b for a, b in zip(e, mono))): c for (p, e), c in r.items()}
                self._insert(vec)
        self.free = [b for b in self.basis if b not in self.pivots]
        self.index = {b: i for i, b in enumerate(self.free)}

    def _insert(self, vec: dict) -> None:
        r = self._reduce_full(vec)
        if not r:
            return
        col = min(r)
        inv = 1 / r[col]
        row = {k: v * inv for k, v in r.items()}
        # keep earlier pivots reduced against the new one
        for pc, prow in self.pivots.items():
            f = prow.get(col)
            if f:
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[col] = row

    def _reduce_full(self, vec: dict) -> dict:
        r = dict(vec)
        changed = True
        while changed:
            changed = False
            for col in list(r):
                if col in self.pivots and col in r:
                    f = r[col]
                    for k, v in self.pivots[col].items():
                        nv = r.get(k, 0) - f * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
                    changed = True
        return r

    def coords(self, vec: dict) -> dict:
        r = self._reduce_full(vec)
        return {self.index[k]: v for k, v in r.items()}

    @property
    def dim(self) -> int:
        return len(self.free)


class KoszulOracle:
    """Tor_p(Q, M)^q via the Koszul complex, one degree at a time."""

    def __init__(self, M: PresentedGradedModule):
        self.M = M
        self.m = M.ring.nvars
        self._quot: dict = {}

    def quotient(self, d: int) -> _Quotient:
        if d not in self._quot:
            self._quot[d] = _Quotient(self.M, d)
        return self._quot[d]

    def _chain_dim(self, p: int, q: int) -> int:
        if p < 0 or p > self.m:
            return 0
        return comb(self.m, p) * self.quotient(q - 2 * p).dim

    def _diff_rank(self, p: int, q: int) -> int:
        """Rank of d_p : (K_p (x) M)^q -> (K_{p-1} (x) M)^q."""
        if p < 1 or p > self.m:
            return 0
        src = self.quotient(q - 2 * p)
        tgt = self.quotient(q - 2 * p + 2)
        if not src.dim or not tgt.dim:
            return 0
        subsets_lo = {S: i for i, S in enumerate(combinations(range(self.m), p - 1))}
        rows = []
        for S in combinations(range(self.m), p):
            for (pos, e) in src.free:
                row: dict = {}
                for t, v in enumerate(S):
                    sign = -1 if t % 2 else 1
                    e2 = list(e)
                    e2[v] += 1
                    img = tgt.coords({(pos, tuple(e2)): Fraction(1)})
                    base = subsets_lo[S[:t] + S[t + 1:]] * tgt.dim
                    for k, c in img.items():
                        key = base + k
                        nv = row.get(key, 0) + sign * c
                        if nv:
                            row[key] = nv
                        else:
                            row.pop(key, None)
                rows.append(row)
        return _rref_rank(rows)

    def tor(self, p: int, q: int) -> int:
        return self._chain_dim(p, q) - self._diff_rank(p, q) - self._diff_rank(p + 1, q)

    def window(self) -> tuple:
        """Degrees that can carry Tor.

        Betti numbers of M are bounded degreewise by those of F/in(N), and
        the Taylor resolution of the monomial module in(N) puts position i
        in degrees at most d_i + deg lcm(leading monomials at i).  The
        Groebner basis only sets this window; the Tor values themselves
        come from linear algebra.
        """
        M = self.M
        if not M.gen_degrees:
            return (0, -1)
        lo = min(M.gen_degrees)
        hi = max(M.relation_degrees() + M.gen_degrees) + 2 * self.m
        lcms: dict = {}
        for g in M.groebner_basis():
            pos, e = leading_term(g)
            old = lcms.get(pos, (0,) * self.m)
            lcms[pos] = tuple(map(max, old, e))
        for pos, e in lcms.items():
            hi = max(hi, M.gen_degrees[pos] + 2 * sum(e))
        return lo, hi

    def table(self) -> dict:
        """All nonzero Tor values; the window still grows if its top edge is nonzero."""
        lo, hi = self.window()
        out: dict = {}
        q = lo
        while q <= hi:
            for p in range(self.m + 1):
                v = self.tor(p, q)
                if v:
                    out[(p, q)] = v
                    if q >= hi - 1:
                        hi = q + 2
            q += 1
        return out


def koszul_tor(M: PresentedGradedModule, p: int, q: int) -> int:
    return KoszulOracle(M).tor(p, q)


def koszul_betti_table(M: PresentedGradedModule) -> dict:
    return KoszulOracle(M).table()
