"""Braid words, their closures as edge/crossing diagrams, and split unions.

Conventions.  Strand positions are 1..b.  The letter sigma_i^(+-1) crosses
the strands at positions i and i+1.  At a crossing the strand entering at
position i ("a") leaves at position i+1, and the strand entering at i+1
("b") leaves at position i.  For a positive letter the "a" strand is the
overstrand.

Edges are numbered so that the first m edges lie on distinct components
(components ordered by their lowest position at the bottom of the braid).
Each component's designated edge is the one crossing the bottom level at
that lowest position.  The remaining edges follow in crossing order, with
the "a" outgoing edge before the "b" outgoing edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"generator index {i} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """Whitespace-separated signed integers, e.g. ``"1 1 -2"``."""
        letters = []
        for tok in text.split():
            try:
                k = int(tok)
            except ValueError:
                raise ValueError(f"bad braid letter {tok!r}") from None
            if k == 0:
                raise ValueError("braid letter 0 is not a generator")
            letters.append((abs(k), 1 if k > 0 else -1))
        return cls(strands, tuple(letters))

    @classmethod
    def from_ints(cls, ints: Sequence[int], strands: int) -> "BraidWord":
        return cls.parse(" ".join(str(k) for k in ints), strands)

    def to_ints(self) -> list:
        return [i * s for i, s in self.letters]

    def __str__(self):
        return " ".join(str(k) for k in self.to_ints())

    @property
    def writhe(self) -> int:
        return sum(s for _, s in self.letters)

    def permutation(self) -> list:
        """perm[p] = position at the top of the strand entering at the bottom at p (0-based)."""
        at = list(range(self.strands))  # at[pos] = starting position of the strand now at pos
        for i, _ in self.letters:
            at[i - 1], at[i] = at[i], at[i - 1]
        perm = [0] * self.strands
        for pos, start in enumerate(at):
            perm[start] = pos
        return perm

    def component_count(self) -> int:
        perm = self.permutation()
        seen = set()
        count = 0
        for p in range(self.strands):
            if p not in seen:
                count += 1
                while p not in seen:
                    seen.add(p)
                    p = perm[p]
        return count


def is_positive(w: BraidWord) -> bool:
    return all(s == 1 for _, s in w.letters)


def split_union(w1: BraidWord, w2: BraidWord) -> BraidWord:
    shifted = tuple((i + w1.strands, s) for i, s in w2.letters)
    return BraidWord(w1.strands + w2.strands, w1.letters + shifted)


@dataclass(frozen=True)
class Crossing:
    index: int          # word position
    position: int       # generator index i
    sign: int
    in_a: int           # edge entering at position i
    in_b: int           # edge entering at position i+1
    out_a: int          # edge leaving at position i+1 (continues in_a)
    out_b: int          # edge leaving at position i (continues in_b)

    @property
    def incoming(self) -> tuple:
        return (self.in_a, self.in_b)

    @property
    def outgoing(self) -> tuple:
        return (self.out_a, self.out_b)


@dataclass
class ClosedBraidDiagram:
    word: BraidWord
    edge_component: list            # edge id (0-based) -> component id (0-based)
    crossings: list
    circles: list = field(default_factory=list)   # edge ids of crossingless circles

    @property
    def strands(self) -> int:
        return self.word.strands

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    @property
    def n_edges(self) -> int:
        return len(self.edge_component)

    @property
    def n_components(self) -> int:
        return len(set(self.edge_component))

    def component_edges(self) -> list:
        out = [[] for _ in range(self.n_components)]
        for e, c in enumerate(self.edge_component):
            out[c].append(e)
        return out

    def edge_names(self) -> list:
        return [f"X{e + 1}" for e in range(self.n_edges)]

    def to_dict(self) -> dict:
        return {
            "word": self.word.to_ints(),
            "strands": self.strands,
            "writhe": self.writhe,
            "components": self.n_components,
            "edges": [{"name": f"X{e + 1}", "component": c + 1}
                      for e, c in enumerate(self.edge_component)],
            "crossings": [{"index": c.index, "generator": c.position, "sign": c.sign,
                           "in": [c.in_a + 1, c.in_b + 1], "out": [c.out_a + 1, c.out_b + 1]}
                          for c in self.crossings],
            "circles": [e + 1 for e in self.circles],
        }


def close(w: BraidWord) -> ClosedBraidDiagram:
    b, n = w.strands, len(w.letters)
    # provisional edge labels: ("out", t, "a"/"b") or ("circle", p)
    last_touch: dict = {}
    for t, (i, _) in enumerate(w.letters):
        last_touch[i - 1] = ("out", t, "b")
        last_touch[i] = ("out", t, "a")
    bottom = [last_touch.get(p, ("circle", p)) for p in range(b)]
    current = list(bottom)
    raw = []
    for t, (i, s) in enumerate(w.letters):
        in_a, in_b = current[i - 1], current[i]
        out_a, out_b = ("out", t, "a"), ("out", t, "b")
        current[i - 1], current[i] = out_b, out_a
        raw.append((t, i, s, in_a, in_b, out_a, out_b))
    # components: union edges along strands
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in bottom:
        find(lab)
    for t, i, s, in_a, in_b, out_a, out_b in raw:
        parent[find(out_a)] = find(in_a)
        parent[find(out_b)] = find(in_b)
    # designated edges: first bottom edge of each component in position order
    designated = []
    seen_roots = set()
    for p in range(b):
        r = find(bottom[p])
        if r not in seen_roots:
            seen_roots.add(r)
            designated.append(bottom[p])
    labels = list(designated)
    for t in range(n):
        for role in ("a", "b"):
            lab = ("out", t, role)
            if lab not in labels:
                labels.append(lab)
    index = {lab: k for k, lab in enumerate(labels)}
    comp_of_root = {find(lab): k for k, lab in enumerate(designated)}
    edge_component = [comp_of_root[find(lab)] for lab in labels]
    crossings = [Crossing(t, i, s, index[in_a], index[in_b], index[out_a], index[out_b])
                 for t, i, s, in_a, in_b, out_a, out_b in raw]
    circles = [index[lab] for lab in labels if lab[0] == "circle"]
    return ClosedBraidDiagram(w, edge_component, crossings, circles)


def markov_test_pairs() -> list:
    """Positive braid words related by conjugation and stabilization."""
    W = BraidWord.parse
    return [
        (W("", 1), W("1", 2)),
        (W("1 1 1", 2), W("1 1 1 2", 3)),
        (W("1 1 1", 2), W("1 2 1 2", 3)),
        (W("1 1", 2), W("1 1 2", 3)),
    ]
