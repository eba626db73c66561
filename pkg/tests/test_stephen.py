import random

import pytest

from schutz.alphabet import Alphabet
from schutz.automaton import complete_one_vertex, fold, is_complete_one_vertex, iso
from schutz.encoder import encode_amalgam, encode_core, encode_tape
from schutz.examples import M_HALT1, M_LOOP, M_THREE
from schutz.munn import munn_tree
from schutz.presentation import ParseError, Presentation
from schutz.stephen import (
    DEFAULT_BUDGET,
    Budget,
    NotAZeroError,
    Saturation,
    Status,
    Verdict,
    check_potential,
    close,
    eq,
    expansion_round,
    is_zero,
    iterates,
    schutzenberger,
    sigma,
)


def pres(text):
    return Presentation.parse(text)


IDEMP = pres("letters x\nrel x x = x\n")
COMM = pres("letters x t\nrel t x = x t\n")


# -- presentations -----------------------------------------------------------


def test_parse_and_format_round_trip():
    p = pres("# comment\nletters a b t\nrel t' a t = b   # tag w\nrel a a = a\n")
    assert len(p) == 2
    assert p.tags == ["w", None]
    q = Presentation.parse(p.format())
    assert q.relations == p.relations and q.tags == p.tags


@pytest.mark.parametrize(
    "text, line",
    [
        ("rel a = b\n", 1),
        ("letters a\nrel a = c\n", 2),
        ("letters a\nrel a a\n", 2),
        ("letters a\nletters b\n", 2),
        ("letters a\n\nfoo a\n", 3),
        ("letters a\nrel = a\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as err:
        pres(text)
    assert err.value.line == line


def test_parse_requires_alphabet():
    with pytest.raises(ParseError):
        pres("# nothing\n")


def test_oriented_has_both_directions():
    assert COMM.oriented() == [((2, 0), (0, 2)), ((0, 2), (2, 0))]


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        Budget(0, 10)


# -- expansion rounds --------------------------------------------------------


def test_closed_input_has_no_instances():
    a = complete_one_vertex(IDEMP.alphabet)
    pending, n = expansion_round(IDEMP, a)
    assert n == 0
    assert iso(fold(pending), a)


def test_commutation_square():
    X = COMM.alphabet
    pending, n = expansion_round(COMM, munn_tree(X, X.word("t x")))
    assert n == 1
    a = fold(pending)
    assert a.n_vertices == 4
    assert a.accepts(X.word("x t")) and a.accepts(X.word("t x"))


def test_halt1_tape_instance_fires_once():
    T1 = encode_tape(M_HALT1, 1)
    X = T1.alphabet
    _, n = expansion_round(T1, munn_tree(X, X.word("z1 i_1")))
    assert n == 1


# -- closure -----------------------------------------------------------------


def test_empty_presentation_closes_immediately():
    p = pres("letters x y\n")
    a = munn_tree(p.alphabet, p.word("x y'"))
    out = close(p, a)
    assert out.status is Status.CLOSED and out.rounds == 0
    assert iso(out.automaton, a)


def test_idempotent_letter_closes_to_loop():
    out = schutzenberger(IDEMP, IDEMP.word("x"))
    assert out.closed
    assert out.automaton.n_vertices == 1
    assert out.collapsed


def test_halt1_w00_collapses():
    enc = encode_amalgam(M_HALT1)
    out = schutzenberger(enc.amalgam, enc.word_mn(0, 0))
    assert out.closed and out.collapsed


def test_loop_budget_trips():
    enc = encode_amalgam(M_LOOP)
    out = schutzenberger(enc.amalgam, enc.word_mn(0, 0), Budget(max_rounds=30))
    assert out.status is Status.BUDGET_EXHAUSTED
    assert out.rounds == 30
    assert not out.collapsed


def test_vertex_budget_trips():
    enc = encode_amalgam(M_LOOP)
    out = schutzenberger(enc.amalgam, enc.word_mn(0, 0), Budget(max_vertices=200))
    assert out.status is Status.BUDGET_EXHAUSTED
    assert out.vertices > 200


def test_closed_outcome_is_fixpoint():
    T1 = encode_tape(M_THREE, 1)
    out = schutzenberger(T1, T1.word("z1 a1 i_1"))
    assert out.closed
    _, n = expansion_round(T1, out.automaton)
    assert n == 0


def test_languages_grow_along_iterates():
    enc = encode_amalgam(M_LOOP)
    X = enc.alphabet
    rng = random.Random(3)
    steps = list(iterates(enc.amalgam, munn_tree(X, enc.word_mn(1, 0)), max_rounds=8))
    assert len(steps) > 3
    accepted_before = set()
    for a in steps:
        now = set()
        # sample words along paths from the initial vertex
        for _ in range(200):
            v, word = a.initial, []
            for _ in range(rng.randint(1, 8)):
                opts = [(x, t) for x, t in enumerate(a.table[v]) if t >= 0]
                x, v = rng.choice(opts)
                word.append(x)
            if v == a.final:
                now.add(tuple(word))
        assert all(a.accepts(wd) for wd in accepted_before)
        accepted_before |= now


# -- word problem ------------------------------------------------------------


def test_eq_free_case():
    p = pres("letters x\n")
    assert eq(p, p.word("x x' x"), p.word("x")) is Verdict.EQUAL
    assert eq(p, p.word("x"), p.word("x'")) is Verdict.NOT_EQUAL


def test_eq_idempotent():
    assert eq(IDEMP, IDEMP.word("x"), IDEMP.word("x x")) is Verdict.EQUAL


def test_eq_loop_unknown_at_default_budget():
    enc = encode_amalgam(M_LOOP)
    f1 = enc.letter("f_1")
    assert eq(enc.amalgam, enc.word_mn(0, 0), (f1, f1)) is Verdict.UNKNOWN


def test_eq_equal_is_stable_under_larger_budget():
    enc = encode_amalgam(M_THREE)
    f1 = enc.letter("f_1")
    for rounds in (50, 200, 1000):
        assert eq(enc.amalgam, enc.word_mn(1, 1), (f1,), Budget(rounds)) is Verdict.EQUAL


def test_eq_not_equal_needs_closed_witness():
    T1 = encode_tape(M_THREE, 1)
    u, v = T1.word("z1 i_1"), T1.word("a1 i_1")
    assert eq(T1, u, v) is Verdict.NOT_EQUAL


# -- zero --------------------------------------------------------------------


def test_core_zero():
    U = encode_core(M_HALT1)
    assert is_zero(U, U.word("f"), "f") is True


def test_zero_detection_on_machines():
    enc = encode_amalgam(M_HALT1)
    assert is_zero(enc.amalgam, enc.word_mn(0, 0), "f_1") is True
    enc = encode_amalgam(M_LOOP)
    assert is_zero(enc.amalgam, enc.word_mn(0, 0), "f_1", Budget(100)) is None


def test_zero_false_when_closed_elsewhere():
    T1 = encode_tape(M_THREE, 1)
    assert is_zero(T1, T1.word("z1 i_1"), "f_1") is False


def test_not_a_zero_is_reported():
    with pytest.raises(NotAZeroError):
        is_zero(COMM, COMM.word("x"), "t")


def test_saturation_stepwise():
    X = IDEMP.alphabet
    sat = Saturation(IDEMP, munn_tree(X, X.word("x")), DEFAULT_BUDGET)
    assert not sat.done
    while not sat.done:
        sat.step()
    assert sat.closed and sat.collapsed and sat.accepts(X.word("x x x"))


# -- potentials --------------------------------------------------------------


def test_sigma():
    assert sigma((4, 0, 5, 4, 4), {4}) == 2


def test_potential_on_trees():
    X = Alphabet(["x", "t"])
    rng = random.Random(5)
    for _ in range(50):
        word = tuple(rng.randrange(4) for _ in range(rng.randint(1, 10)))
        a = munn_tree(X, word)
        h = check_potential(a, ["t"])
        assert h is not None
        assert h[a.final] == sigma(word, {2})


def test_potential_absent_on_t_loop():
    X = Alphabet(["t"])
    assert check_potential(complete_one_vertex(X), ["t"]) is None


def test_tloop_along_stephen_sequences():
    """No loop with nonzero t-balance appears before a finiteness relation fires."""
    T1 = encode_tape(M_THREE, 1)
    core = T1.select("ctwe")
    X = T1.alphabet
    rng = random.Random(9)
    letters = [X.letter(n) for n in ("z1", "a1", "t1", "i_1", "p_1")]
    tested = 0
    while tested < 50:
        word = tuple(rng.choice(letters) ^ rng.randrange(2) for _ in range(rng.randint(1, 7)))
        for a in iterates(core, munn_tree(X, word), max_rounds=20):
            assert check_potential(a, ["t1"]) is not None
        tested += 1


def test_non_finiteness_relations_are_t_balanced():
    T1 = encode_tape(M_THREE, 1)
    t = T1.alphabet.letter("t1")
    for (lhs, rhs), tag in zip(T1.relations, T1.tags):
        if tag != "f":
            assert sigma(lhs, {t}) == sigma(rhs, {t})


def test_collapse_checked_each_round():
    enc = encode_amalgam(M_HALT1)
    sat = Saturation(enc.amalgam, munn_tree(enc.alphabet, enc.word_mn(2, 2)), Budget(1000))
    while not sat.done:
        sat.step()
    assert is_complete_one_vertex(sat.automaton)
    assert sat.rounds < 50
