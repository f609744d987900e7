"""Finitely presented graded modules over :class:`GradedRing`.

A module is ``F / im(R)`` where ``F`` is free on generators of the given
degrees and the columns of ``R`` are homogeneous relation vectors.  Modules
coming out of :func:`homology` remember representative vectors and a lifting
device, so maps between homology modules can be induced from chain maps.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .polyring import (GradedFreeModule, GradedRing, GraphBasis, HomMatrix,
                       ModuleVector, Polynomial, apply_columns, groebner,
                       reduce_by, substitute_terms, vadd, vec_degree, vmul_poly,
                       _Elt, _Reducer)


class PresentedGradedModule:
    """Cokernel of a homogeneous relation matrix of degree 0."""

    def __init__(self, ring: GradedRing, gen_degrees: Sequence[int],
                 relations: Sequence = (), check: bool = True):
        self.ring = ring
        self.gen_degrees = [int(d) for d in gen_degrees]
        rels = []
        for r in relations:
            r = dict(r.terms) if isinstance(r, ModuleVector) else dict(r)
            if r:
                rels.append(r)
        self.relations = rels
        self.reps = None          # representatives in an ambient free module
        self._coords = None       # ambient vector -> coordinates on our generators
        self._gb = None
        if check:
            for j, r in enumerate(rels):
                if any(p >= len(self.gen_degrees) or p < 0 for p, _ in r):
                    raise ValueError(f"relation {j} refers to a missing generator")
                if vec_degree(r, self.gen_degrees) is False:
                    raise ValueError(f"relation {j} is not homogeneous")

    # -- basic data ---------------------------------------------------------
    @classmethod
    def free(cls, ring: GradedRing, degrees: Sequence[int]) -> "PresentedGradedModule":
        return cls(ring, degrees, [])

    @classmethod
    def zero(cls, ring: GradedRing) -> "PresentedGradedModule":
        return cls(ring, [], [])

    @property
    def ngens(self) -> int:
        return len(self.gen_degrees)

    @property
    def cover(self) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.gen_degrees)

    def relation_degrees(self) -> list:
        return [vec_degree(r, self.gen_degrees) for r in self.relations]

    def relation_matrix(self) -> HomMatrix:
        src = GradedFreeModule(self.ring, self.relation_degrees())
        return HomMatrix(src, self.cover, self.relations)

    def groebner_basis(self) -> list:
        if self._gb is None:
            self._gb = groebner(self.relations, self.gen_degrees)
        return self._gb

    def reduce(self, vec: dict) -> dict:
        """Normal form of a cover vector modulo the relations."""
        return reduce_by(vec, self.groebner_basis(), self.gen_degrees)

    def contains_zero(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def is_zero(self) -> bool:
        return not self.simplified().ngens

    def shift(self, s: int) -> "PresentedGradedModule":
        """M{s}: every degree raised by s."""
        out = PresentedGradedModule(self.ring, [d + s for d in self.gen_degrees],
                                    self.relations, check=False)
        out.reps, out._coords = self.reps, self._coords
        return out

    def __repr__(self):
        return (f"PresentedGradedModule(vars={list(self.ring.names)}, "
                f"gens={self.gen_degrees}, relations={len(self.relations)})")

    # -- minimization of the presentation ----------------------------------
    def simplified(self) -> "PresentedGradedModule":
        """Cancel generators against relations with a unit entry.

        Representatives of the surviving generators stay valid; the
        coordinate map is updated to express cancelled generators in terms
        of the remaining ones.
        """
        alive, rels, images = cancel_unit_entries(self.ngens, self.relations,
                                                  self.ring.nvars)
        out = PresentedGradedModule(self.ring, [self.gen_degrees[i] for i in alive],
                                    rels, check=False)
        if self.reps is not None:
            out.reps = [self.reps[i] for i in alive]
        if self._coords is not None:
            out._coords = self._coords.then(images)
        return out

    # -- coordinates for induced maps ----------------------------------------
    def coordinates(self, vec: dict) -> dict:
        """Coordinates of an ambient cycle on this module's generators."""
        if self._coords is None:
            raise ValueError("module carries no representative data")
        return self._coords(vec)

    # -- text form ------------------------------------------------------------
    def to_text(self) -> str:
        lines = ["vars " + " ".join(self.ring.names),
                 "gens " + " ".join(str(d) for d in self.gen_degrees)]
        cover = self.cover
        for r in self.relations:
            entries = ModuleVector(cover, r).entries
            lines.append("rel " + " ; ".join(str(p) for p in entries))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PresentedGradedModule":
        ring = None
        degs = None
        rels = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(" ")
            if head == "vars":
                ring = GradedRing(rest.split())
            elif head == "gens":
                degs = [int(x) for x in rest.split()]
            elif head == "rel":
                if ring is None or degs is None:
                    raise ValueError("'vars' and 'gens' must precede 'rel' lines")
                parts = [p.strip() for p in rest.split(";")]
                if len(parts) != len(degs):
                    raise ValueError(f"relation has {len(parts)} entries, expected {len(degs)}")
                vec = {}
                for i, p in enumerate(parts):
                    for e, c in ring.parse(p).terms.items():
                        vec[(i, e)] = c
                rels.append(vec)
            else:
                raise ValueError(f"unknown line {raw!r}")
        if ring is None:
            ring = GradedRing([])
        return cls(ring, degs or [], rels)


def cancel_unit_entries(ngens: int, relations: Sequence[dict], nvars: int):
    """Remove generator/relation pairs joined by a nonzero constant entry.

    Returns ``(alive, relations, images)``: the surviving old generator
    indices, the updated relations renumbered onto the survivors, and for
    every old generator its expression in the survivors.
    """
    zero = (0,) * nvars
    rels = [dict(r) for r in relations if r]
    images = {i: {(i, zero): Fraction(1)} for i in range(ngens)}
    alive = list(range(ngens))
    alive_set = set(alive)
    while True:
        hit = None
        for j, r in enumerate(rels):
            for (p, e), c in r.items():
                if e == zero and p in alive_set:
                    if hit is None or (len(r), p) < (len(rels[hit[1]]), hit[0]):
                        hit = (p, j, c)
            if hit is not None and len(r) == 1:
                break
        if hit is None:
            break
        i, j, c = hit
        pivot = rels.pop(j)
        # generator i equals -(1/c) * (pivot without its i-th entry)
        sub = {k: -v / c for k, v in pivot.items() if k[0] != i}
        rels = [r for r in (_eliminate(r, i, sub) for r in rels) if r]
        for k in images:
            images[k] = _eliminate(images[k], i, sub)
        alive.remove(i)
        alive_set.discard(i)
    renum = {old: new for new, old in enumerate(alive)}

    def renumber(v):
        return {(renum[p], e): c for (p, e), c in v.items()}

    return alive, [renumber(r) for r in rels], [renumber(images[k]) for k in range(ngens)]


def _eliminate(vec: dict, i: int, sub: dict) -> dict:
    """Replace generator i in ``vec`` by the vector ``sub``."""
    coeff = {e: c for (p, e), c in vec.items() if p == i}
    if not coeff:
        return vec
    rest = {k: v for k, v in vec.items() if k[0] != i}
    return vadd(rest, vmul_poly(sub, coeff))


class _Coordinates:
    """Lift an ambient cycle through [K | boundaries] and keep the K part."""

    def __init__(self, gb: GraphBasis, nk: int, transform=None):
        self.gb = gb
        self.nk = nk
        self.transform = transform

    def __call__(self, vec: dict) -> dict:
        if not vec:
            return {}
        u = self.gb.lift(vec)
        if u is None:
            raise ValueError("vector is not a cycle of the ambient complex")
        coords = {k: v for k, v in u.items() if k[0] < self.nk}
        if self.transform is not None:
            coords = apply_columns(self.transform, coords)
        return coords

    def then(self, transform: list) -> "_Coordinates":
        if self.transform is not None:
            transform = [apply_columns(transform, c) for c in self.transform]
        return _Coordinates(self.gb, self.nk, transform)


class ModuleMap:
    """Homogeneous map of presented modules, given on generators."""

    def __init__(self, source: PresentedGradedModule, target: PresentedGradedModule,
                 columns: Sequence, degree: int = 0):
        if source.ring != target.ring:
            raise ValueError("source and target over different rings")
        if len(columns) != source.ngens:
            raise ValueError(f"{len(columns)} columns for {source.ngens} generators")
        self.source = source
        self.target = target
        self.columns = [dict(c.terms) if isinstance(c, ModuleVector) else dict(c)
                        for c in columns]
        self.degree = degree
        for j, c in enumerate(self.columns):
            d = vec_degree(c, target.gen_degrees)
            if d is False or (d is not None and d != source.gen_degrees[j] + degree):
                raise ValueError(f"column {j} is not homogeneous of degree "
                                 f"{source.gen_degrees[j] + degree}")

    @classmethod
    def from_matrix(cls, source, target, A: HomMatrix) -> "ModuleMap":
        return cls(source, target, A.columns, A.degree)

    @classmethod
    def zero(cls, source, target, degree: int = 0) -> "ModuleMap":
        return cls(source, target, [{} for _ in range(source.ngens)], degree)

    @classmethod
    def identity(cls, M: PresentedGradedModule) -> "ModuleMap":
        z = (0,) * M.ring.nvars
        return cls(M, M, [{(i, z): Fraction(1)} for i in range(M.ngens)])

    def apply(self, vec: dict) -> dict:
        return apply_columns(self.columns, vec)

    def is_zero(self) -> bool:
        return all(self.target.contains_zero(c) for c in self.columns)


def check_map(f: ModuleMap) -> ModuleMap:
    """Accept ``f`` only if it carries source relations into target relations."""
    for j, r in enumerate(f.source.relations):
        if not f.target.contains_zero(f.apply(r)):
            raise ValueError(f"map is not well defined: relation column {j} "
                             f"of the source is not sent to zero")
    return f


def _project(vec: dict, n: int) -> dict:
    return {k: v for k, v in vec.items() if k[0] < n}


def homology(f: ModuleMap | None, g: ModuleMap | None,
             middle: PresentedGradedModule | None = None,
             simplify: bool = True) -> PresentedGradedModule:
    """ker g / im f at the middle module; either map may be None (zero map).

    The result keeps representatives (vectors over the middle module's
    cover) and a coordinate map used by :func:`induced_map`.
    """
    if middle is None:
        middle = f.target if f is not None else g.source
    B = middle
    if f is not None and f.target is not B and f.target.gen_degrees != B.gen_degrees:
        raise ValueError("f does not land in the middle module")
    if g is not None and g.source is not B and g.source.gen_degrees != B.gen_degrees:
        raise ValueError("g does not start at the middle module")
    ring = B.ring
    nv = ring.nvars
    zero = (0,) * nv
    nB = B.ngens
    if f is not None and g is not None:
        for j, c in enumerate(f.columns):
            if not g.target.contains_zero(g.apply(c)):
                raise ValueError(f"composite g o f is nonzero on generator {j}")
    # cycles
    if g is None or not g.columns:
        K = [{(i, zero): Fraction(1)} for i in range(nB)]
    else:
        C = g.target
        cols = g.columns + C.relations
        src = [d + g.degree for d in B.gen_degrees] + C.relation_degrees()
        gb = GraphBasis(cols, C.gen_degrees, src, nv)
        K = []
        seen = set()
        for v in gb.kernel():
            k = _project(v, nB)
            key = frozenset(k.items())
            if k and key not in seen:
                seen.add(key)
                K.append(k)
    kdeg = [vec_degree(k, B.gen_degrees) for k in K]
    # boundaries
    bound = []
    bdeg = []
    if f is not None:
        for j, c in enumerate(f.columns):
            bound.append(c)
            bdeg.append(f.source.gen_degrees[j] + f.degree)
    bound += B.relations
    bdeg += B.relation_degrees()
    gb2 = GraphBasis(K + bound, B.gen_degrees, kdeg + bdeg, nv)
    rels = [r for r in (_project(v, len(K)) for v in gb2.kernel()) if r]
    H = PresentedGradedModule(ring, kdeg, rels, check=False)
    H.reps = K
    H._coords = _Coordinates(gb2, len(K))
    return H.simplified() if simplify else H


def induced_map(phi: ModuleMap, H1: PresentedGradedModule,
                H2: PresentedGradedModule, degree: int | None = None) -> ModuleMap:
    """Map H1 -> H2 induced by a chain map ``phi`` between the ambient modules."""
    if H1.reps is None:
        raise ValueError("source homology carries no representatives")
    cols = [H2.coordinates(phi.apply(rep)) for rep in H1.reps]
    return ModuleMap(H1, H2, cols, phi.degree if degree is None else degree)


def quotient_by_element(M: PresentedGradedModule, f: Polynomial) -> PresentedGradedModule:
    """M / fM."""
    if f.ring != M.ring:
        raise ValueError("element over a different ring")
    if f.is_zero():
        return PresentedGradedModule(M.ring, M.gen_degrees, M.relations, check=False)
    if f.degree() is None:
        raise ValueError("element is not homogeneous")
    zero = (0,) * M.ring.nvars
    extra = [vmul_poly({(i, zero): Fraction(1)}, f.terms) for i in range(M.ngens)]
    return PresentedGradedModule(M.ring, M.gen_degrees, M.relations + extra, check=False)


def change_ring(M: PresentedGradedModule, ring: GradedRing,
                images: Sequence[dict]) -> PresentedGradedModule:
    """Base change along the ring map X_i -> images[i] (term dicts over ``ring``)."""
    rels = []
    for r in M.relations:
        per: dict = {}
        for (p, e), c in r.items():
            per.setdefault(p, {})[e] = c
        vec: dict = {}
        for p, poly in per.items():
            for e, c in substitute_terms(poly, images, ring.nvars).items():
                vec[(p, e)] = c
        if vec:
            rels.append(vec)
    return PresentedGradedModule(ring, M.gen_degrees, rels)


def identify_variables(M: PresentedGradedModule, classes: Sequence[Sequence[str]],
                       names: Sequence[str] | None = None) -> PresentedGradedModule:
    """Collapse each class of variables to a single variable.

    Every variable must lie in exactly one class, and within a class all
    variables must act identically on M.
    """
    flat = [v for cls in classes for v in cls]
    if sorted(flat) != sorted(M.ring.names) or len(set(flat)) != len(flat):
        raise ValueError("classes must partition the ring variables")
    if names is None:
        names = [cls[0] for cls in classes]
    ring = GradedRing(names)
    zero = (0,) * M.ring.nvars
    for cls in classes:
        a = M.ring.var(cls[0])
        for other in cls[1:]:
            diff = (M.ring.var(other) - a).terms
            for i in range(M.ngens):
                if not M.contains_zero(vmul_poly({(i, zero): Fraction(1)}, diff)):
                    raise ValueError(f"{other} and {cls[0]} act differently on generator {i}")
    which = {v: k for k, cls in enumerate(classes) for v in cls}
    images = []
    for v in M.ring.names:
        e = [0] * len(classes)
        e[which[v]] = 1
        images.append({tuple(e): Fraction(1)})
    return change_ring(M, ring, images)


def direct_sum(mods: Sequence[PresentedGradedModule]) -> PresentedGradedModule:
    if not mods:
        raise ValueError("empty direct sum needs a ring")
    ring = mods[0].ring
    degs, rels, off = [], [], 0
    for M in mods:
        degs += M.gen_degrees
        rels += [{(p + off, e): c for (p, e), c in r.items()} for r in M.relations]
        off += M.ngens
    return PresentedGradedModule(ring, degs, rels, check=False)


def tensor_over_Q(M: PresentedGradedModule, N: PresentedGradedModule) -> PresentedGradedModule:
    """M (x)_Q N over the ring with both variable sets (M's first)."""
    clash = set(M.ring.names) & set(N.ring.names)
    if clash:
        raise ValueError(f"variable names shared by both rings: {sorted(clash)}")
    ring = GradedRing(M.ring.names + N.ring.names)
    zm, zn = (0,) * M.ring.nvars, (0,) * N.ring.nvars
    nN = N.ngens
    degs = [a + b for a in M.gen_degrees for b in N.gen_degrees]
    rels = []
    for r in M.relations:
        for j in range(nN):
            rels.append({(p * nN + j, e + zn): c for (p, e), c in r.items()})
    for i in range(M.ngens):
        for s in N.relations:
            rels.append({(i * nN + p, zm + e): c for (p, e), c in s.items()})
    return PresentedGradedModule(ring, degs, rels, check=False)


_MONO_CACHE: dict = {}


def _monomials(nvars: int, k: int) -> list:
    key = (nvars, k)
    if key not in _MONO_CACHE:
        out = []
        for combo in combinations_with_replacement(range(nvars), k):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        _MONO_CACHE[key] = out
    return _MONO_CACHE[key]


def hilbert_series(M: PresentedGradedModule, cutoff: int, start: int | None = None) -> dict:
    """{degree: dim M^degree} for every degree from ``start`` to ``cutoff``.

    ``start`` defaults to the lowest generator degree (below it M vanishes).
    Dimensions are standard-monomial counts against a Groebner basis.
    """
    if start is None:
        start = min(M.gen_degrees, default=cutoff + 1)
    lts: dict = {}
    for g in M.groebner_basis():
        elt = _Elt(g, M.gen_degrees)
        lts.setdefault(elt.lt[0], []).append(elt.lt[1])
    nv = M.ring.nvars
    out = {}
    for d in range(start, cutoff + 1):
        total = 0
        for pos, s in enumerate(M.gen_degrees):
            r = d - s
            if r < 0 or r % 2:
                continue
            if nv == 0:
                total += 0 if r else int(not lts.get(pos))
                continue
            divs = lts.get(pos, [])
            for e in _monomials(nv, r // 2):
                if not any(all(a <= b for a, b in zip(l, e)) for l in divs):
                    total += 1
        out[d] = total
    return out
