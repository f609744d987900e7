import pytest

from homflybetti.braid import BraidWord, close
from homflybetti.grmodule import hilbert_series
from homflybetti.krcomplex import (NegativeCrossingError, assemble, crossing_square,
                                   dplus_homology, edge_ring, middle_homology,
                                   reduced_homology)
from homflybetti.polyring import HomMatrix

from helpers import link

HOPF = close(BraidWord.parse("1 1", 2))

# the Hopf double complex as displayed in the worked example (rows are targets)
A, B = "X2 - X3", "(X2 - X3)*(X1 - X3)"
DPLUS = {
    (-2, 0): [["X2 - X3", "X3 - X2"]],
    (-4, 0): [["X2 - X3"], ["X2 - X3"]],
    (-2, -2): [["X2 - X3", f"-{B}", "0", "0"], ["0", "0", B, "X3 - X2"]],
    (-4, -2): [[B, "0"], ["X2 - X3", "0"], ["0", "X2 - X3"], ["0", B]],
    (-2, -4): [[B, f"-{B}"]],
    (-4, -4): [[B], [B]],
}
DV = {
    (0, -2): [["1", "1"]],
    (-2, -2): [["1", "0", "X1 - X3", "0"], ["0", "X1 - X3", "0", "1"]],
    (-4, -2): [["X1 - X3", "X1 - X3"]],
    (0, -4): [["1"], ["-1"]],
    (-2, -4): [["X1 - X3", "0"], ["0", "1"], ["-1", "0"], ["0", "X3 - X1"]],
    (-4, -4): [["X1 - X3"], ["X3 - X1"]],
}
SHIFTS = {
    (-4, 0): [(0, -4, 0)], (-2, 0): [(0, -2, 0)] * 2, (0, 0): [(0, 0, 0)],
    (-4, -2): [(2, -4, -2)] * 2,
    (-2, -2): [(0, -2, -2), (2, -2, -2), (2, -2, -2), (0, -2, -2)],
    (0, -2): [(0, 0, -2)] * 2,
    (-4, -4): [(4, -4, -4)], (-2, -4): [(2, -2, -4)] * 2, (0, -4): [(0, 0, -4)],
}


def _parse_expr(ring, text):
    # products of parenthesized factors, as written in the display
    text = text.strip()
    sign = 1
    if text.startswith("-("):
        sign, text = -1, text[1:]
    if text.startswith("("):
        out = ring.one()
        for part in text.split("*"):
            out = out * ring.parse(part.strip().strip("()"))
        return out * ring.const(sign)
    return ring.parse(text)


def _rows(M: HomMatrix):
    return [[str(p) for p in row] for row in M.rows()]


def test_hopf_edge_ring():
    E = edge_ring(HOPF)
    assert list(E.ring.names) == ["X1", "X2", "X3"]
    assert E.dependent == [3]
    assert str(E.edge(3)) == "X1 + X2 - X3"


def test_unknot_and_single_crossing_edge_rings():
    assert list(edge_ring(close(BraidWord.parse("", 1))).ring.names) == ["X1"]
    E = edge_ring(close(BraidWord.parse("1", 2)))
    # both incoming edges are the outgoing ones: the relation vanishes identically
    assert E.ring.nvars == 2


def test_crossing_squares_match_display():
    E = edge_ring(HOPF)
    R = E.ring
    c1, c2 = (crossing_square(c, E) for c in HOPF.crossings)
    assert c1.shifts == {(-2, 0): (0, -2, 0), (0, 0): (0, 0, 0),
                         (-2, -2): (2, -2, -2), (0, -2): (0, 0, -2)}
    assert c1.top == R.parse("X2 - X3")
    assert c1.bottom == _parse_expr(R, "(X2 - X3)*(X1 - X3)")
    assert c1.left == R.parse("X1 - X3") and c1.right == R.one()
    assert c2.top == R.parse("X3 - X2")
    assert c2.bottom == _parse_expr(R, "-(X2 - X3)*(X1 - X3)")
    assert c2.left == c1.left and c2.right == c1.right


def test_hopf_complex_matches_display():
    C = assemble(HOPF)
    R = C.ring
    for pos, shifts in SHIFTS.items():
        assert [tuple(s) for s in C.shifts[pos]] == shifts, pos
    for table, maps in ((DPLUS, C.dplus), (DV, C.dv)):
        for pos, rows in table.items():
            expected = [[str(_parse_expr(R, e)) for e in row] for row in rows]
            assert _rows(maps[pos]) == expected, pos


def test_hopf_ranks():
    C = assemble(HOPF)
    ranks = {pos: len(C.shifts[pos]) for pos in C.positions()}
    assert [ranks[(j, 0)] for j in (-4, -2, 0)] == [1, 2, 1]
    assert [ranks[(j, -2)] for j in (-4, -2, 0)] == [2, 4, 2]
    assert [ranks[(j, -4)] for j in (-4, -2, 0)] == [1, 2, 1]


@pytest.mark.parametrize("word,strands", [("1 1", 2), ("1 1 1", 2), ("1 2 1 2", 3),
                                          ("1 1 3 3", 4), ("1", 2), ("", 1)])
def test_complex_identities(word, strands):
    # check() asserts d+^2 = 0, dv^2 = 0, commuting squares and homogeneity
    assemble(close(BraidWord.parse(word, strands))).check()
    assemble(close(BraidWord.parse(word, strands)), reduced=True).check()


def test_negative_crossing_rejected():
    with pytest.raises(NegativeCrossingError, match="negative crossings unsupported"):
        assemble(close(BraidWord.parse("-1", 2)))


def dims(M, lo, hi):
    return [hilbert_series(M, hi, start=lo).get(d, 0) for d in range(lo, hi + 1)]


def test_hopf_dplus_homology_hilbert_series():
    # displayed H(C0, d+) over Q[X1, X2, X3]: R/(X2-X3) pieces and R/((X2-X3)(X1-X3))
    Hp = dplus_homology(assemble(HOPF))
    line = [1, 0, 2, 0, 3, 0, 4, 0, 5]           # R/(X2 - X3) = Q[two variables]
    curve = [1, 0, 3, 0, 5, 0, 7, 0, 9]          # R/(quartic-degree product) = (1+t^2)/(1-t^2)^2
    z = [0] * 9
    # at (-2,-2) both displayed generators have their unit entry in a {2}-shifted summand
    twisted = [0, 0] + [2 * v for v in line[:7]]
    expect = {(-4, 0): z, (-2, 0): line, (0, 0): line,
              (-4, -2): z, (-2, -2): twisted, (0, -2): [2 * v for v in line],
              (-4, -4): z, (-2, -4): [0, 0] + curve[:7], (0, -4): curve}
    for pos, series in expect.items():
        assert dims(Hp[pos], 0, 8) == series, pos


def test_unknot_homology():
    H = link("", 1).homology
    assert [pos for pos, _ in H.items()] == [(0, 0)]
    M = H[(0, 0)]
    assert M.gen_degrees == [1] and not M.relations


def test_two_component_unlink():
    H = link("", 2).homology
    assert [pos for pos, _ in H.items()] == [(1, -1)]
    M = H[(1, -1)]
    assert M.ring.nvars == 2 and M.gen_degrees == [2] and not M.relations


def test_hopf_strata_series():
    H = link("1 1", 2).homology
    assert sorted(pos for pos, _ in H.items()) == [(1, -3), (1, 1), (3, -3)]
    assert dims(H[(1, 1)], 0, 6) == [1, 0, 1, 0, 1, 0, 1]
    assert dims(H[(3, -3)], 0, 6) == [0, 0, 1, 0, 2, 0, 3]
    assert dims(H[(1, -3)], 0, 6) == [0, 0, 0, 0, 1, 0, 2]


def test_reduced_routes_agree():
    for word, strands in (("1 1", 2), ("1 1 1", 2), ("1 1", 3)):
        data = link(word, strands)
        via_quotient = reduced_homology(data.homology)
        direct = data.reduced_homology
        assert sorted(p for p, _ in via_quotient.items()) == sorted(p for p, _ in direct.items())
        for pos, M in direct.items():
            assert dims(M, -4, 12) == dims(via_quotient[pos], -4, 12)


def test_reduced_unknot_and_hopf():
    Hr = link("", 1).reduced_homology
    assert Hr[(0, 0)].gen_degrees == [0] and Hr.ring.nvars == 0
    Hr = link("1 1", 2).reduced_homology
    assert sum(dims(Hr[(1, 1)], -4, 12)) == 1
    assert dims(Hr[(1, 1)], -1, -1) == [1]


def test_stratum_parity_and_annihilation():
    # parity: H^{i,j,k} nonzero forces i + j odd; collapse already checked annihilation
    for word, strands in (("1 1", 2), ("1 1 1", 2), ("1 1 3 3", 4), ("1 1", 3)):
        for (j, k), M in link(word, strands).homology.items():
            for i, d in hilbert_series(M, 20, start=-10).items():
                if d:
                    assert (i + j) % 2 == 1


def test_middle_homology_rejects_negative():
    with pytest.raises(NegativeCrossingError):
        middle_homology(close(BraidWord.parse("1 -1", 2)))
