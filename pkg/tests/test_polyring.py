import random

import pytest
from hypothesis import given, strategies as st

from homflybetti.polyring import (GradedFreeModule, GradedRing, HomMatrix, NotInImage,
                                  apply_columns, buchberger, is_groebner, kernel_gens,
                                  ModuleVector, lift_through, normal_form, syzygy_basis)

from helpers import random_poly_terms

R2 = GradedRing(["X1", "X2"])
R3 = GradedRing(["X1", "X2", "X3"])


def vec(F, *entries):
    return F.vector([F.ring.parse(e) if isinstance(e, str) else e for e in entries])


def test_variables_have_degree_two():
    x1, x2 = R2.gens()
    assert (x1 * x2 + x1 * x1).degree() == 4
    assert (x1 + R2.one()).degree() is None


class TestNormalForm:
    F = GradedFreeModule(R2, [0])

    def test_divisible(self):
        assert normal_form(vec(self.F, "X1^2"), [vec(self.F, "X1")]).is_zero()

    def test_not_divisible(self):
        v = vec(self.F, "X2")
        assert normal_form(v, [vec(self.F, "X1")]) == v

    def test_grevlex_division(self):
        # X1*X2 + X2^2 = X2 * (X1 + X2)
        assert normal_form(vec(self.F, "X1*X2 + X2^2"), [vec(self.F, "X1 + X2")]).is_zero()


class TestBuchberger:
    def test_monomial_generators(self):
        F = GradedFreeModule(R2, [0])
        G = buchberger([vec(F, "X1"), vec(F, "X2")])
        assert sorted(map(repr, G)) == ["(X1)", "(X2)"]

    def test_single_generator(self):
        F = GradedFreeModule(R2, [0])
        G = buchberger([vec(F, "X1 + X2")])
        assert G == [vec(F, "X1 + X2")]

    def test_vector_generator_membership(self):
        F = GradedFreeModule(R2, [0, 0])
        G = buchberger([vec(F, "X1", "X2")])
        assert G == [vec(F, "X1", "X2")]
        assert normal_form(vec(F, "X1^2", "X1*X2"), G).is_zero()
        assert not normal_form(vec(F, "X2^2", "X1*X2"), G).is_zero()

    def test_inhomogeneous_rejected(self):
        F = GradedFreeModule(R2, [0])
        with pytest.raises(ValueError):
            buchberger([vec(F, "X1 + 1")])


class TestSyzygies:
    def test_koszul_pair(self):
        F = GradedFreeModule(R2, [0])
        S = syzygy_basis([vec(F, "X1"), vec(F, "X2")])
        assert len(S) == 1
        s = S[0]
        assert s == vec(s.module, "X2", "-X1") or s == vec(s.module, "-X2", "X1")

    def test_nonzerodivisor(self):
        F = GradedFreeModule(R2, [0])
        assert syzygy_basis([vec(F, "X1")]) == []

    def test_regular_sequence_of_three(self):
        F = GradedFreeModule(R3, [0])
        G = [vec(F, "X1"), vec(F, "X2"), vec(F, "X3")]
        S = syzygy_basis(G)
        assert len(S) == 3
        S2 = syzygy_basis(buchberger(S))
        assert len(S2) == 1

    def test_rejects_non_groebner(self):
        F = GradedFreeModule(R2, [0])
        G = [vec(F, "X1^2 + X2^2"), vec(F, "X1*X2")]
        assert not is_groebner(G)
        with pytest.raises(ValueError):
            syzygy_basis(G)


class TestKernelAndLift:
    def test_row_kernel(self):
        A = HomMatrix.from_rows(GradedFreeModule(R2, [0, 0]), GradedFreeModule(R2, [-2]),
                                [[R2.parse("X1"), R2.parse("X2")]])
        K = kernel_gens(A)
        assert len(K) == 1
        assert A.apply(K[0]).is_zero()
        assert K[0].entries[0] in (R2.parse("X2"), R2.parse("-X2"))

    def test_identity_kernel(self):
        F = GradedFreeModule(R2, [0, 0])
        A = HomMatrix.from_rows(F, F, [[1, 0], [0, 1]])
        assert kernel_gens(A) == []

    def test_domain_kernel(self):
        F = GradedFreeModule(R3, [0])
        A = HomMatrix(F, GradedFreeModule(R3, [-2]), [vec(GradedFreeModule(R3, [-2]), "X2 - X3").terms])
        assert kernel_gens(A) == []

    def test_lifts(self):
        T = GradedFreeModule(R2, [0])
        A = HomMatrix(GradedFreeModule(R2, [2]), T, [vec(T, "X1").terms])
        u = lift_through(A, vec(T, "X1^2"))
        assert u.entries[0] == R2.parse("X1")
        assert lift_through(A, vec(T, "X2")) is NotInImage
        B = HomMatrix(GradedFreeModule(R2, [2, 2]), T, [vec(T, "X1").terms, vec(T, "X2").terms])
        v = vec(T, "X1*X2")
        assert B.apply(lift_through(B, v)) == v


@st.composite
def submodules(draw):
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    ring = R3 if rng.random() < 0.5 else R2
    ranks = rng.randint(1, 2)
    F = GradedFreeModule(ring, [0] * ranks)
    gens = []
    for _ in range(rng.randint(1, 4)):
        k = rng.randint(1, 2)
        terms = {}
        for i in range(ranks):
            for e, c in random_poly_terms(rng, ring.nvars, k).items():
                terms[(i, e)] = c
        if terms:
            gens.append(ModuleVector(F, terms))
    return gens


@given(submodules())
def test_groebner_basis_properties(gens):
    if not gens:
        return
    G = buchberger(gens)
    # every S-pair reduces to zero, and every generator is a member
    assert is_groebner(G)
    for g in gens:
        assert normal_form(g, G).is_zero()
    for s in syzygy_basis(G):
        assert not apply_columns([g.terms for g in G], s.terms)


@given(submodules())
def test_kernel_vectors_are_killed(gens):
    if not gens:
        return
    F = gens[0].module
    degs = [v.degree() for v in gens]
    A = HomMatrix(GradedFreeModule(F.ring, degs), F, [v.terms for v in gens])
    K = kernel_gens(A)
    for k in K:
        assert A.apply(k).is_zero()
    # random combinations of kernel generators stay in the kernel and reduce to zero
    rng = random.Random(len(K))
    if K:
        KG = buchberger(K)
        combo = None
        for k in K:
            c = F.ring.const(rng.randint(-2, 2))
            term = k.scale(c)
            combo = term if combo is None else combo + term
        assert A.apply(combo).is_zero()
        assert normal_form(combo, KG).is_zero()
