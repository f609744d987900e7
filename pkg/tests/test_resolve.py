import random

import pytest
from hypothesis import given, strategies as st

from homflybetti.grmodule import PresentedGradedModule, hilbert_series, tensor_over_Q
from homflybetti.polyring import GradedRing, apply_columns
from homflybetti.resolve import (ZERO_MODULE, betti_table, depth, graded_dim_from_betti,
                                 koszul_betti_table, koszul_tor, minimal_free_resolution,
                                 projective_dimension)

from helpers import random_module

R2 = GradedRing(["X1", "X2"])


def module(ring, degs, *rels):
    out = []
    for r in rels:
        vec = {}
        for i, text in enumerate(r):
            for e, c in ring.parse(text).terms.items():
                vec[(i, e)] = c
        out.append(vec)
    return PresentedGradedModule(ring, degs, out)


RESIDUE = module(R2, [0], ["X1"], ["X2"])
DIAGONAL = module(R2, [0], ["X1 - X2"])


def test_free_module():
    res = minimal_free_resolution(PresentedGradedModule.free(R2, [0]))
    assert res.length == 0
    assert res.betti() == {(0, 0): 1}


def test_koszul_resolution_of_residue_field():
    assert betti_table(RESIDUE) == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_diagonal_quotient():
    assert betti_table(DIAGONAL) == {(0, 0): 1, (1, 2): 1}
    assert projective_dimension(DIAGONAL) == 1


def test_shifted_free():
    assert betti_table(PresentedGradedModule.free(R2, [2])) == {(0, 2): 1}


def test_quotient_by_variable():
    M = module(R2, [0], ["X1"])
    assert betti_table(M) == {(0, 0): 1, (1, 2): 1}
    assert projective_dimension(M) == 1 and depth(M) == 1


def test_residue_field_depth():
    assert projective_dimension(RESIDUE) == 2 and depth(RESIDUE) == 0


def test_zero_module_conventions():
    Z = module(R2, [0], ["1"])
    assert betti_table(Z) == {}
    assert projective_dimension(Z) is ZERO_MODULE
    assert str(ZERO_MODULE) == "zero-module"
    with pytest.raises(ValueError):
        depth(Z)


def test_non_minimal_presentation_is_minimized():
    # e1 = X1 e0 by a unit relation, a redundant multiple of it, then e1 = 0
    M = module(R2, [0, 2], ["X1", "-1"], ["X1^2", "-X1"], ["X2", "0"], ["0", "1"])
    assert betti_table(M) == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert minimal_free_resolution(M).is_minimal()


def test_koszul_oracle_examples():
    assert koszul_tor(RESIDUE, 2, 4) == 1
    F = PresentedGradedModule.free(R2, [0])
    assert all(koszul_tor(F, p, q) == 0 for p in (1, 2) for q in range(-2, 10))
    assert koszul_tor(DIAGONAL, 1, 2) == 1


def test_graded_dim_examples():
    beta = betti_table(RESIDUE)
    assert graded_dim_from_betti(beta, 2, 0) == 1
    assert graded_dim_from_betti(beta, 2, 2) == 0
    assert graded_dim_from_betti(betti_table(module(R2, [0], ["X1"])), 2, 4) == 1
    assert graded_dim_from_betti({(0, 2): 1}, 2, 6) == 3


def _check_resolution(M):
    res = minimal_free_resolution(M)
    nv = M.ring.nvars
    assert res.length <= nv
    assert res.is_minimal()
    for p in range(1, res.length):
        # consecutive composites vanish
        for col in res.differentials[p]:
            assert not apply_columns(res.differentials[p - 1], col)
    return res


@given(st.integers(0, 10 ** 6))
def test_random_resolutions(seed):
    M = random_module(random.Random(seed))
    res = _check_resolution(M)
    beta = res.betti()
    assert beta == koszul_betti_table(M)
    H = hilbert_series(M, 14, start=-2)
    for i in range(-2, 15):
        assert graded_dim_from_betti(beta, M.ring.nvars, i) == H.get(i, 0)


@given(st.integers(0, 10 ** 6))
def test_tensor_convolution(seed):
    rng = random.Random(seed)
    M = random_module(rng, max_vars=2, max_gens=2, max_rels=3, names="X")
    N = random_module(rng, max_vars=1, max_gens=2, max_rels=2, names="Y")
    bm, bn = betti_table(M), betti_table(N)
    expected = {}
    for (p1, q1), v1 in bm.items():
        for (p2, q2), v2 in bn.items():
            key = (p1 + p2, q1 + q2)
            expected[key] = expected.get(key, 0) + v1 * v2
    assert betti_table(tensor_over_Q(M, N)) == expected


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_powers_of_maximal_ideal(m, d):
    from homflybetti.grmodule import _monomials
    ring = GradedRing([f"X{i + 1}" for i in range(m)])
    rels = [{(0, e): 1} for e in _monomials(m, d)]
    M = PresentedGradedModule(ring, [0], rels)
    assert projective_dimension(M) == m
    assert depth(M) == 0
