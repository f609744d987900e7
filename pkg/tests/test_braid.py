import pytest
from hypothesis import given, strategies as st

from homflybetti.braid import (BraidWord, close, is_positive, markov_test_pairs,
                               split_union)

W = BraidWord.parse


def cycles(perm):
    # independent cycle count of a permutation list
    seen, count = set(), 0
    for start in range(len(perm)):
        if start in seen:
            continue
        count += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
    return count


def test_parse_and_print():
    w = W("1 1 -2", 3)
    assert w.letters == ((1, 1), (1, 1), (2, -1))
    assert str(w) == "1 1 -2"
    assert w.writhe == 1


@pytest.mark.parametrize("text,strands", [("0", 2), ("3", 3), ("a", 2), ("1", 1)])
def test_parse_errors(text, strands):
    with pytest.raises(ValueError):
        W(text, strands)


def test_hopf_closure():
    D = close(W("1 1", 2))
    assert D.n_edges == 4 and len(D.crossings) == 2
    assert D.n_components == 2 and D.writhe == 2
    c0 = D.crossings[0]
    assert (c0.in_a, c0.in_b, c0.out_a, c0.out_b) == (0, 1, 2, 3)
    assert D.component_edges() == [[0, 2], [1, 3]]


def test_empty_word_closure():
    D = close(W("", 1))
    assert D.n_edges == 1 and D.circles == [0]
    assert D.crossings == [] and D.n_components == 1 and D.writhe == 0


def test_trefoil_closure():
    D = close(W("1 1 1", 2))
    assert (D.n_edges, len(D.crossings), D.n_components, D.writhe) == (6, 3, 1, 3)


def test_split_union_examples():
    assert split_union(W("1 1", 2), W("1 1", 2)) == W("1 1 3 3", 4)
    assert split_union(W("1 1", 2), W("", 1)) == W("1 1", 3)
    u = split_union(W("1", 2), W("1", 2))
    assert u == W("1 3", 4)
    assert close(u).n_components == 2


def test_positivity():
    assert is_positive(W("1 1", 2))
    assert not is_positive(W("-1", 2))
    assert is_positive(W("", 1))


def test_markov_pairs():
    pairs = markov_test_pairs()
    assert len(pairs) >= 4
    for a, b in pairs:
        assert is_positive(a) and is_positive(b)
        assert cycles(a.permutation()) == cycles(b.permutation())
        assert close(a).n_components == close(b).n_components


words = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(1, max(1, n - 1)), max_size=6).map(
        lambda ls: BraidWord.from_ints(ls if n > 1 else [], n)))


@given(words)
def test_closure_invariants(w):
    D = close(w)
    # every letter creates two outgoing edges; untouched strands are circles
    assert D.n_edges == 2 * len(w.letters) + len(D.circles)
    assert D.n_components == cycles(w.permutation()) == w.component_count()
    assert D.writhe == w.writhe
    # first m edges lie on distinct components
    assert sorted(D.edge_component[:D.n_components]) == list(range(D.n_components))
    starts = [0] * D.n_edges
    ends = [0] * D.n_edges
    for c in D.crossings:
        for e in c.incoming:
            ends[e] += 1
        for e in c.outgoing:
            starts[e] += 1
    for e in range(D.n_edges):
        if e in D.circles:
            assert starts[e] == ends[e] == 0
        else:
            assert starts[e] == ends[e] == 1
    for c in D.crossings:
        # both edges through a strand of a crossing share its component
        assert D.edge_component[c.in_a] == D.edge_component[c.out_a]
        assert D.edge_component[c.in_b] == D.edge_component[c.out_b]


@given(words, words)
def test_split_union_adds(w1, w2):
    u = split_union(w1, w2)
    assert u.strands == w1.strands + w2.strands
    assert u.writhe == w1.writhe + w2.writhe
    assert close(u).n_components == close(w1).n_components + close(w2).n_components


def test_diagram_dump():
    d = close(W("1 1", 2)).to_dict()
    assert d["word"] == [1, 1] and d["components"] == 2
    assert [e["component"] for e in d["edges"]] == [1, 2, 1, 2]
