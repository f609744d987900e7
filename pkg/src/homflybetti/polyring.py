"""Graded polynomial rings over Q, free modules, and module Groebner bases.

Every ring variable has degree 2.  Submodules of graded free modules are
handled through sparse vectors: a dict mapping ``(position, exponent tuple)``
to a nonzero :class:`fractions.Fraction`.  The term order is
position-over-term with earlier positions greater, and graded reverse
lexicographic order on monomials within a position.

The extended-module trick does most of the heavy lifting: a Groebner basis of
the graph ``{(A u, u)}`` of a matrix, with the image part ordered first,
yields both the kernel of ``A`` and a lifting procedure through ``A``.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

from .exactalg import LaurentPoly, as_rational


# ---------------------------------------------------------------------------
# rings and polynomials

class GradedRing:
    """Q[names], every variable of degree 2."""

    __slots__ = ("names",)

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        self.names = names

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.names == other.names

    def __hash__(self):
        return hash(("GradedRing", self.names))

    def __repr__(self):
        return f"GradedRing({list(self.names)!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: 1})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name) -> "Polynomial":
        i = name if isinstance(name, int) else self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Polynomial":
        lp = LaurentPoly.parse(text, self.names)
        if any(x < 0 for e in lp.terms for x in e):
            raise ValueError(f"negative exponent in polynomial {text!r}")
        return Polynomial(self, lp.terms)


class Polynomial:
    """Element of a :class:`GradedRing`; immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms):
        self.ring = ring
        clean = {}
        for e, c in terms.items():
            c = as_rational(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        return Polynomial(self.ring, _padd(self.terms, self._lift(other).terms))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return Polynomial(self.ring, _pmul(self.terms, self._lift(other).terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Homogeneous degree (variables count 2), or None if inhomogeneous or zero."""
        degs = {2 * sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def __str__(self):
        return str(LaurentPoly(self.ring.names, self.terms))

    def __repr__(self):
        return f"Polynomial('{self}')"


def _padd(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def substitute_terms(terms: dict, images: Sequence[dict], nvars_out: int) -> dict:
    """Apply the ring map X_i -> images[i] (term dicts over the target ring)."""
    cache: dict = {}
    out: dict = {}
    one = {(0,) * nvars_out: Fraction(1)}
    for e, c in terms.items():
        t = {k: v * c for k, v in one.items()}
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    p = one
                    for _ in range(k):
                        p = _pmul(p, images[i])
                    cache[key] = p
                t = _pmul(t, cache[key])
        out = _padd(out, t)
    return out


# ---------------------------------------------------------------------------
# free modules, vectors, matrices

def _grading(shift) -> int:
    return shift if isinstance(shift, int) else shift[0]


class GradedFreeModule:
    """Free module with one generator per shift; generator i sits in degree shift[i].

    Shifts may be integers or integer tuples whose first coordinate is the
    module grading (tuples are used by the chain complexes).
    """

    __slots__ = ("ring", "shifts")

    def __init__(self, ring: GradedRing, shifts):
        self.ring = ring
        self.shifts = tuple(s if isinstance(s, int) else tuple(s) for s in shifts)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def degrees(self) -> list:
        return [_grading(s) for s in self.shifts]

    def __eq__(self, other):
        return (isinstance(other, GradedFreeModule) and self.ring == other.ring
                and self.shifts == other.shifts)

    def __hash__(self):
        return hash((self.ring, self.shifts))

    def __repr__(self):
        return f"GradedFreeModule({list(self.ring.names)}, {list(self.shifts)})"

    def basis_vector(self, i: int) -> "ModuleVector":
        return ModuleVector(self, {(i, (0,) * self.ring.nvars): Fraction(1)})

    def vector(self, entries: Sequence) -> "ModuleVector":
        if len(entries) != self.rank:
            raise ValueError(f"expected {self.rank} entries, got {len(entries)}")
        terms = {}
        for i, p in enumerate(entries):
            if not isinstance(p, Polynomial):
                p = self.ring.const(p)
            for e, c in p.terms.items():
                terms[(i, e)] = c
        return ModuleVector(self, terms)


class ModuleVector:
    """Element of a :class:`GradedFreeModule`, stored sparsely."""

    __slots__ = ("module", "terms")

    def __init__(self, module: GradedFreeModule, terms: dict):
        self.module = module
        self.terms = {k: v for k, v in terms.items() if v}

    @property
    def entries(self) -> list:
        per = [dict() for _ in range(self.module.rank)]
        for (i, e), c in self.terms.items():
            per[i][e] = c
        return [Polynomial(self.module.ring, d) for d in per]

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        return vec_degree(self.terms, self.module.degrees())

    def __add__(self, other):
        return ModuleVector(self.module, vadd(self.terms, other.terms))

    def __sub__(self, other):
        return ModuleVector(self.module, vadd(self.terms, other.terms, -1))

    def __neg__(self):
        return ModuleVector(self.module, {k: -v for k, v in self.terms.items()})

    def scale(self, p) -> "ModuleVector":
        if not isinstance(p, Polynomial):
            p = self.module.ring.const(p)
        return ModuleVector(self.module, vmul_poly(self.terms, p.terms))

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "(" + ", ".join(str(p) for p in self.entries) + ")"


class HomMatrix:
    """Matrix of a graded map source -> target; ``columns[j]`` is the image of generator j.

    ``degree`` is the degree offset: a generator of degree s maps to a
    homogeneous vector of degree s + degree.
    """

    __slots__ = ("source", "target", "columns", "degree")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule,
                 columns: Sequence[dict], degree: int = 0, check: bool = True):
        if len(columns) != source.rank:
            raise ValueError(f"{len(columns)} columns for a source of rank {source.rank}")
        self.source = source
        self.target = target
        self.columns = [dict(c) if not isinstance(c, ModuleVector) else dict(c.terms)
                        for c in columns]
        self.degree = degree
        if check:
            tdeg = target.degrees()
            for j, (col, s) in enumerate(zip(self.columns, source.degrees())):
                if any(pos >= target.rank for pos, _ in col):
                    raise ValueError(f"column {j} has a position outside the target")
                d = vec_degree(col, tdeg)
                if d is False:
                    raise ValueError(f"column {j} is not homogeneous")
                if d is not None and d != s + degree:
                    raise ValueError(
                        f"column {j} has degree {d}, expected {s + degree}")

    @classmethod
    def from_rows(cls, source, target, rows: Sequence[Sequence], degree: int = 0):
        ring = source.ring
        cols = [dict() for _ in range(source.rank)]
        for i, row in enumerate(rows):
            for j, p in enumerate(row):
                if not isinstance(p, Polynomial):
                    p = ring.const(p)
                for e, c in p.terms.items():
                    cols[j][(i, e)] = c
        return cls(source, target, cols, degree)

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.source.ring,
                          {e: c for (p, e), c in self.columns[j].items() if p == i})

    def rows(self) -> list:
        return [[self.entry(i, j) for j in range(self.source.rank)]
                for i in range(self.target.rank)]

    def apply(self, v) -> ModuleVector:
        terms = v.terms if isinstance(v, ModuleVector) else v
        return ModuleVector(self.target, apply_columns(self.columns, terms))

    def compose(self, other: "HomMatrix") -> "HomMatrix":
        """self o other."""
        cols = [apply_columns(self.columns, c) for c in other.columns]
        return HomMatrix(other.source, self.target, cols, self.degree + other.degree,
                         check=False)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)


# ---------------------------------------------------------------------------
# sparse vector kernel

def vadd(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def vmul_poly(vec: dict, poly: dict) -> dict:
    out: dict = {}
    for (pos, e1), c1 in vec.items():
        for e2, c2 in poly.items():
            k = (pos, tuple(a + b for a, b in zip(e1, e2)))
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def vmul_term(vec: dict, mono: tuple, c) -> dict:
    return {(pos, tuple(a + b for a, b in zip(e, mono))): v * c for (pos, e), v in vec.items()}


def apply_columns(columns: Sequence[dict], vec: dict) -> dict:
    """Matrix (given by columns) times a vector."""
    out: dict = {}
    for (j, e), c in vec.items():
        for (i, e2), c2 in columns[j].items():
            k = (i, tuple(a + b for a, b in zip(e, e2)))
            v = out.get(k, 0) + c * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def vec_degree(vec: dict, degrees: Sequence[int]):
    """Degree of a homogeneous vector; None for zero, False if inhomogeneous."""
    ds = {2 * sum(e) + degrees[pos] for pos, e in vec}
    if not ds:
        return None
    if len(ds) > 1:
        return False
    return ds.pop()


def vec_shift_positions(vec: dict, offset: int) -> dict:
    return {(p + offset, e): c for (p, e), c in vec.items()}


def _tkey(t):
    pos, e = t
    return (-pos, sum(e), tuple(-x for x in reversed(e)))


def _hkey(t):
    # min-heap key equivalent to the max of _tkey
    pos, e = t
    return (pos, -sum(e), tuple(reversed(e)))


def leading_term(vec: dict):
    return max(vec, key=_tkey)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Elt:
    __slots__ = ("vec", "lt", "lc", "deg")

    def __init__(self, vec, degrees):
        self.vec = vec
        self.lt = leading_term(vec)
        self.lc = vec[self.lt]
        pos, e = self.lt
        self.deg = 2 * sum(e) + degrees[pos]


class _Reducer:
    """Reducers indexed by leading position."""

    def __init__(self):
        self.by_pos: dict = {}

    def add(self, elt: _Elt):
        self.by_pos.setdefault(elt.lt[0], []).append(elt)

    def find(self, t):
        pos, e = t
        for g in self.by_pos.get(pos, ()):
            if _divides(g.lt[1], e):
                return g
        return None


def _reduce(vec: dict, red: _Reducer, full: bool = True) -> dict:
    p = dict(vec)
    heap = [(_hkey(t), t) for t in p]
    heapq.heapify(heap)
    r = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = p.get(t)
        if c is None:
            continue
        g = red.find(t)
        if g is None:
            if not full:
                r.update(p)
                return r
            r[t] = c
            del p[t]
            continue
        q = c / g.lc
        m = tuple(a - b for a, b in zip(t[1], g.lt[1]))
        for (gp, ge), gc in g.vec.items():
            k = (gp, tuple(a + b for a, b in zip(ge, m)))
            old = p.get(k)
            if old is None:
                p[k] = -q * gc
                heapq.heappush(heap, (_hkey(k), k))
            else:
                v = old - q * gc
                if v:
                    p[k] = v
                else:
                    del p[k]
    return r


def _normalize(vec: dict) -> dict:
    lc = vec[leading_term(vec)]
    if lc == 1:
        return vec
    inv = 1 / lc
    return {k: v * inv for k, v in vec.items()}


def _check_homogeneous(vecs, degrees):
    for i, v in enumerate(vecs):
        if vec_degree(v, degrees) is False:
            raise ValueError(f"generator {i} is not homogeneous")


def groebner(vecs: Sequence[dict], degrees: Sequence[int]) -> list:
    """Reduced Groebner basis (list of monic sparse vectors) of the span of ``vecs``.

    Generators are processed together with S-pairs in order of increasing
    degree; pairs are pruned with the Gebauer-Moeller criteria.
    """
    degrees = list(degrees)
    vecs = [v for v in vecs if v]
    _check_homogeneous(vecs, degrees)
    G: list = []
    red = _Reducer()
    queue: list = []
    counter = 0
    for v in vecs:
        queue.append((vec_degree(v, degrees), 0, counter, ("gen", v)))
        counter += 1
    heapq.heapify(queue)
    live_pairs: dict = {}

    def add_element(vec):
        nonlocal counter
        elt = _Elt(_normalize(vec), degrees)
        k = len(G)
        pos, e = elt.lt
        # Gebauer-Moeller: drop old pairs made redundant by the new element
        for key, (lcm, _) in list(live_pairs.items()):
            i, j = key
            if G[i].lt[0] != pos or not _divides(e, lcm):
                continue
            li = tuple(map(max, G[i].lt[1], e))
            lj = tuple(map(max, G[j].lt[1], e))
            if li != lcm and lj != lcm:
                del live_pairs[key]
        cands = []
        for i, g in enumerate(G):
            if g.lt[0] == pos:
                cands.append((i, tuple(map(max, g.lt[1], e))))
        kept = []
        for i, l in cands:
            if any(l2 != l and _divides(l2, l) for _, l2 in cands):
                continue
            if any(l2 == l for _, l2 in kept):
                continue
            kept.append((i, l))
        G.append(elt)
        red.add(elt)
        for i, l in kept:
            d = 2 * sum(l) + degrees[pos]
            live_pairs[(i, k)] = (l, d)
            heapq.heappush(queue, (d, 1, counter, ("pair", (i, k))))
            counter += 1

    while queue:
        _, _, _, (kind, data) = heapq.heappop(queue)
        if kind == "gen":
            h = _reduce(data, red)
        else:
            if data not in live_pairs:
                continue
            del live_pairs[data]
            h = _reduce(_spair(G[data[0]], G[data[1]]), red)
        if h:
            add_element(h)
    return _interreduce([g.vec for g in G], degrees)


def _spair(f: _Elt, g: _Elt) -> dict:
    l = tuple(map(max, f.lt[1], g.lt[1]))
    mf = tuple(a - b for a, b in zip(l, f.lt[1]))
    mg = tuple(a - b for a, b in zip(l, g.lt[1]))
    return vadd(vmul_term(f.vec, mf, 1 / f.lc), vmul_term(g.vec, mg, 1 / g.lc), -1)


def _interreduce(vecs: list, degrees) -> list:
    elts = [_Elt(v, degrees) for v in vecs]
    elts.sort(key=lambda g: (g.deg, _hkey(g.lt)))
    minimal: list = []
    for g in elts:
        if any(h.lt[0] == g.lt[0] and _divides(h.lt[1], g.lt[1]) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        red = _Reducer()
        for j, h in enumerate(minimal):
            if j != i:
                red.add(h)
        tail = {k: v for k, v in g.vec.items() if k != g.lt}
        vec = _reduce(tail, red)
        vec[g.lt] = g.lc
        out.append(_normalize(vec))
    out.sort(key=lambda v: _hkey(leading_term(v)))
    return out


def reduce_by(vec: dict, basis: Sequence[dict], degrees) -> dict:
    """Full normal form of ``vec`` with respect to the vectors ``basis``."""
    red = _Reducer()
    for g in basis:
        if g:
            red.add(_Elt(g, degrees))
    return _reduce(vec, red)


def divide_with_quotients(vec: dict, basis: Sequence[dict]):
    """Division of ``vec`` by ``basis``; returns (quotients, remainder).

    ``quotients[i]`` is a polynomial term dict with
    ``vec = sum quotients[i] * basis[i] + remainder``.
    """
    elts = [(i, leading_term(g), g) for i, g in enumerate(basis) if g]
    quots = [dict() for _ in basis]
    p = dict(vec)
    r = {}
    while p:
        t = leading_term(p)
        c = p[t]
        for i, lt, g in elts:
            if lt[0] == t[0] and _divides(lt[1], t[1]):
                q = c / g[lt]
                m = tuple(a - b for a, b in zip(t[1], lt[1]))
                quots[i][m] = quots[i].get(m, 0) + q
                p = vadd(p, vmul_term(g, m, q), -1)
                break
        else:
            r[t] = c
            del p[t]
    return [{k: v for k, v in q.items() if v} for q in quots], r


# ---------------------------------------------------------------------------
# graph-module computations: kernels and lifts

class GraphBasis:
    """Groebner basis of the graph of a matrix, reused for kernels and lifts.

    Positions 0..t-1 hold the image part and t..t+s-1 the source part; with
    position-over-term ordering the image part is eliminated first.
    """

    def __init__(self, columns: Sequence[dict], target_degrees: Sequence[int],
                 source_degrees: Sequence[int], nvars: int):
        self.t = len(target_degrees)
        self.degrees = list(target_degrees) + list(source_degrees)
        zero = (0,) * nvars
        gens = [vadd(c, {(self.t + j, zero): Fraction(1)}) for j, c in enumerate(columns)]
        self.basis = groebner(gens, self.degrees)
        self._red = _Reducer()
        for g in self.basis:
            self._red.add(_Elt(g, self.degrees))

    def kernel(self) -> list:
        return [vec_shift_positions(g, -self.t) for g in self.basis
                if leading_term(g)[0] >= self.t]

    def image_basis(self) -> list:
        """Groebner basis of the image (the part with leading term in the target)."""
        return [{k: v for k, v in g.items() if k[0] < self.t} for g in self.basis
                if leading_term(g)[0] < self.t]

    def lift(self, vec: dict):
        """Some u with A u = vec, or None when vec is outside the image."""
        r = _reduce(vec, self._red)
        if any(p < self.t for p, _ in r):
            return None
        return {(p - self.t, e): -c for (p, e), c in r.items()}


class _NotInImage:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotInImage"

    def __bool__(self):
        return False


NotInImage = _NotInImage()


def _source_degrees(A: HomMatrix) -> list:
    return [d + A.degree for d in A.source.degrees()]


def kernel_gens(A: HomMatrix) -> list:
    """Generators of the kernel of A, as vectors of A.source."""
    gb = GraphBasis(A.columns, A.target.degrees(), _source_degrees(A), A.source.ring.nvars)
    return [ModuleVector(A.source, v) for v in gb.kernel()]


def lift_through(A: HomMatrix, v: ModuleVector):
    """u with A u = v, or :data:`NotInImage`."""
    if v.is_zero():
        return ModuleVector(A.source, {})
    gb = GraphBasis(A.columns, A.target.degrees(), _source_degrees(A), A.source.ring.nvars)
    u = gb.lift(v.terms)
    if u is None:
        return NotInImage
    return ModuleVector(A.source, u)


# ---------------------------------------------------------------------------
# public wrappers over ModuleVector lists

def _common_module(vs: Sequence[ModuleVector]) -> GradedFreeModule:
    mods = {v.module for v in vs}
    if len(mods) != 1:
        raise ValueError("vectors live in different free modules")
    return mods.pop()


def buchberger(gens: Sequence[ModuleVector]) -> list:
    """Reduced Groebner basis of the submodule generated by ``gens``."""
    if not gens:
        return []
    F = _common_module(gens)
    return [ModuleVector(F, g) for g in groebner([v.terms for v in gens], F.degrees())]


def normal_form(v: ModuleVector, G: Sequence[ModuleVector]) -> ModuleVector:
    if G:
        _common_module(list(G) + [v])
    return ModuleVector(v.module, reduce_by(v.terms, [g.terms for g in G], v.module.degrees()))


def is_groebner(G: Sequence[ModuleVector]) -> bool:
    if not G:
        return True
    degrees = G[0].module.degrees()
    elts = [_Elt(g.terms, degrees) for g in G if g.terms]
    red = _Reducer()
    for e in elts:
        red.add(e)
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            if elts[i].lt[0] != elts[j].lt[0]:
                continue
            if _reduce(_spair(elts[i], elts[j]), red):
                return False
    return True


def syzygy_basis(G: Sequence[ModuleVector]) -> list:
    """Schreyer generators of the syzygy module of a Groebner basis ``G``.

    The result lives in a free module with one generator per element of G,
    placed in the degree of that element.
    """
    if not G:
        return []
    F = _common_module(G)
    degrees = F.degrees()
    vecs = [g.terms for g in G]
    if any(not v for v in vecs):
        raise ValueError("zero vector in Groebner basis input")
    gdeg = [vec_degree(v, degrees) for v in vecs]
    if any(d is False for d in gdeg):
        raise ValueError("inhomogeneous element in Groebner basis input")
    S = GradedFreeModule(F.ring, gdeg)
    lts = [leading_term(v) for v in vecs]
    out = []
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if lts[i][0] != lts[j][0]:
                continue
            l = tuple(map(max, lts[i][1], lts[j][1]))
            mi = tuple(a - b for a, b in zip(l, lts[i][1]))
            mj = tuple(a - b for a, b in zip(l, lts[j][1]))
            ci, cj = 1 / vecs[i][lts[i]], 1 / vecs[j][lts[j]]
            sp = vadd(vmul_term(vecs[i], mi, ci), vmul_term(vecs[j], mj, cj), -1)
            quots, rem = divide_with_quotients(sp, vecs)
            if rem:
                raise ValueError("input is not a Groebner basis (S-pair "
                                 f"({i},{j}) has nonzero remainder)")
            syz = {(i, mi): ci}
            syz = vadd(syz, {(j, mj): cj}, -1)
            for k, q in enumerate(quots):
                syz = vadd(syz, {(k, e): c for e, c in q.items()}, -1)
            if syz:
                out.append(ModuleVector(S, syz))
    return out
