import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schutz.alphabet import Alphabet, inverse
from schutz.automaton import (
    InverseAutomaton,
    PendingAutomaton,
    canonical_form,
    complete_one_vertex,
    export_dot,
    fold,
    iso,
    trace,
)
from schutz.munn import munn_tree

XY = Alphabet(["x", "y"])
XYT = Alphabet(["x", "y", "t"])


def random_pending(rng, alphabet, n_max=50):
    """Connected involutive graph, usually nondeterministic."""
    n = rng.randint(1, n_max)
    a = PendingAutomaton(alphabet, n, initial=0, final=rng.randrange(n))
    for v in range(1, n):
        a.add_edge(rng.randrange(v), rng.randrange(alphabet.size), v)
    for _ in range(rng.randint(0, n)):
        a.add_edge(rng.randrange(n), rng.randrange(alphabet.size), rng.randrange(n))
    return a


def permuted(a: InverseAutomaton, rng) -> InverseAutomaton:
    perm = list(range(a.n_vertices))
    rng.shuffle(perm)
    table = [None] * a.n_vertices
    for v, row in enumerate(a.table):
        table[perm[v]] = tuple(t if t < 0 else perm[t] for t in row)
    return InverseAutomaton(a.alphabet, tuple(table), perm[a.initial], perm[a.final])


def test_alphabet_order_and_inverse():
    assert XY.word("x x' y'") == (0, 1, 3)
    assert XY.format(inverse(XY.word("x y'"))) == "y x'"
    assert XY.size == 4
    with pytest.raises(ValueError):
        Alphabet(["x", "x"])
    with pytest.raises(ValueError):
        Alphabet(["x'"])
    with pytest.raises(KeyError):
        XY.letter("z")


def test_deterministic_input_unchanged():
    a = munn_tree(XY, XY.word("x y x'"))
    b = fold(a)
    assert iso(a, b) and b.n_vertices == a.n_vertices


def test_zigzag_folds_to_one_edge():
    a = fold(PendingAutomaton.linear(XY, XY.word("x x'")))
    assert a.n_vertices == 2
    assert a.n_edges == 1
    assert a.initial == a.final


def test_fold_involutive_and_valid():
    rng = random.Random(1)
    for _ in range(50):
        a = fold(random_pending(rng, XYT))
        a.validate()


def test_fold_order_independent():
    rng = random.Random(2)
    for _ in range(100):
        p = random_pending(rng, XYT)
        forms = {canonical_form(fold(p, random.Random(s))) for s in range(2)}
        assert len(forms) == 1


def test_fold_idempotent():
    rng = random.Random(3)
    for _ in range(30):
        a = fold(random_pending(rng, XY))
        assert iso(fold(a), a)


def test_trace_examples():
    m = munn_tree(XY, XY.word("x"))
    assert trace(m, m.initial, XY.word("x")) == m.final
    assert trace(m, m.initial, XY.word("x x")) is None
    c = complete_one_vertex(XY)
    for w in ("x", "x y' x'", "y y y"):
        assert trace(c, 0, XY.word(w)) == 0


@given(st.lists(st.integers(0, 5), min_size=1, max_size=12))
@settings(max_examples=100, deadline=None)
def test_inverse_path_returns(word):
    word = tuple(word)
    a = munn_tree(XYT, word)
    end = trace(a, a.initial, word)
    assert end == a.final
    assert trace(a, end, inverse(word)) == a.initial


def test_canonical_form_permutation_invariant():
    rng = random.Random(4)
    for _ in range(50):
        a = fold(random_pending(rng, XYT))
        assert canonical_form(permuted(a, rng)) == canonical_form(a)
        assert iso(a, a)


def test_canonical_form_sees_final_vertex():
    a = munn_tree(XY, XY.word("x y"))
    b = a.with_roots(a.initial, a.initial)
    assert canonical_form(a) != canonical_form(b)


def test_munn_xy_differs_from_yx():
    assert not iso(munn_tree(XY, XY.word("x y")), munn_tree(XY, XY.word("y x")))


def test_canonical_form_rejects_nondeterministic():
    p = PendingAutomaton(XY, 3)
    p.add_edge(0, 0, 1)
    p.add_edge(0, 0, 2)
    with pytest.raises(ValueError):
        canonical_form(p)


def test_dot_of_complete_vertex():
    dot = export_dot(complete_one_vertex(XYT))
    assert dot.count("->") == 3
    assert "doublecircle" in dot


def test_dot_of_munn_x():
    dot = export_dot(munn_tree(XY, XY.word("x")))
    assert dot.count("->") == 1
    assert dot.count("label=") == 3
    assert "lightgrey" in dot


def test_dot_bytes_stable():
    rng = random.Random(5)
    a = fold(random_pending(rng, XYT))
    assert export_dot(a) == export_dot(permuted(a, rng))
