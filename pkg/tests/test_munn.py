import itertools
import random

import pytest

from oracles import scheiblich_key, vagner_classes
from schutz.alphabet import Alphabet
from schutz.automaton import NO_VERTEX, canonical_form, iso, trace
from schutz.munn import eq_free, munn_tree

X = Alphabet(["x"])
XY = Alphabet(["x", "y"])


def w(text, alphabet=XY):
    return alphabet.word(text)


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        munn_tree(XY, ())


def test_xx_inverse():
    a = munn_tree(XY, w("x x'"))
    assert a.n_vertices == 2 and a.initial == a.final


def test_vagner_identity():
    a = munn_tree(XY, w("x x' x"))
    assert a.n_vertices == 2
    assert a.final == a.table[a.initial][0]
    assert iso(a, munn_tree(XY, w("x")))


def test_idempotents_commute():
    a, b = munn_tree(XY, w("x x' y y'")), munn_tree(XY, w("y y' x x'"))
    assert iso(a, b)
    assert a.initial == a.final


def test_eq_free_examples():
    assert eq_free(X, w("x x' x", X), w("x", X))
    assert not eq_free(X, w("x", X), w("x'", X))


def test_munn_tree_is_tree():
    rng = random.Random(11)
    for _ in range(200):
        word = tuple(rng.randrange(4) for _ in range(rng.randint(1, 15)))
        a = munn_tree(XY, word)
        assert a.n_edges == a.n_vertices - 1
        assert trace(a, a.initial, word) == a.final
        a.validate()


def test_eq_free_congruence():
    rng = random.Random(12)
    for _ in range(300):
        u = tuple(rng.randrange(4) for _ in range(rng.randint(1, 5)))
        v = u + tuple(x ^ 1 for x in reversed(u)) + u  # equal to u
        tail = tuple(rng.randrange(4) for _ in range(rng.randint(1, 3)))
        assert eq_free(XY, u, v)
        assert eq_free(XY, u + tail, v + tail)
        assert eq_free(XY, tail + u, tail + v)


def test_matches_scheiblich_invariant():
    words = [wd for n in range(1, 6) for wd in itertools.product(range(4), repeat=n)]
    by_tree, by_key = {}, {}
    for wd in words:
        by_tree.setdefault(canonical_form(munn_tree(XY, wd)), set()).add(wd)
        by_key.setdefault(scheiblich_key(wd), set()).add(wd)
    assert sorted(map(sorted, by_tree.values())) == sorted(map(sorted, by_key.values()))


def test_vagner_oracle_small():
    # length <= 4, cap 6: cheap version of the acceptance run
    cls = vagner_classes(2, 4, 6)
    for u, v in itertools.combinations(list(cls)[:200], 2):
        assert (cls[u] == cls[v]) == eq_free(XY, u, v)


def test_no_vertex_constant():
    assert NO_VERTEX < 0
