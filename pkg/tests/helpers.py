"""Shared builders for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from homflybetti.braid import BraidWord
from homflybetti.grmodule import PresentedGradedModule, _monomials
from homflybetti.linkbetti import analyze
from homflybetti.polyring import GradedRing


@lru_cache(maxsize=None)
def link(word: str, strands: int):
    """Cached full analysis of the closure of a positive braid word."""
    return analyze(BraidWord.parse(word, strands))


def random_poly_terms(rng: random.Random, nvars: int, k: int, density: float = 0.6) -> dict:
    monos = [()] if nvars == 0 else _monomials(nvars, k)
    terms = {}
    for e in monos:
        if rng.random() < density:
            c = rng.randint(-3, 3)
            if c:
                terms[e] = Fraction(c)
    return terms


def random_module(rng: random.Random, max_vars: int = 3, max_gens: int = 4,
                  max_rels: int = 5, names: str = "X") -> PresentedGradedModule:
    """Small homogeneous presentation; constant entries are allowed on purpose."""
    nvars = rng.randint(1, max_vars)
    ring = GradedRing([f"{names}{i + 1}" for i in range(nvars)])
    ngens = rng.randint(1, max_gens)
    degs = [rng.choice((0, 2)) for _ in range(ngens)]
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        target = rng.choice((2, 4))
        vec = {}
        for i, d in enumerate(degs):
            k = (target - d) // 2
            if k < 0 or rng.random() < 0.3:
                continue
            for e, c in random_poly_terms(rng, nvars, k).items():
                vec[(i, e)] = c
        if vec:
            rels.append(vec)
    return PresentedGradedModule(ring, degs, rels)
