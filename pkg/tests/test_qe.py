"""Quantifier elimination over one letter, sentence negation, and the
finite/co-finite classifier."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msostr import (Assignment, EpsilonMode, NonUnaryAlphabet,
                    OpenFormula, SecondOrderPresent, classify, evaluate,
                    finite_sentence, neg_qf, parse_formula, render_qf,
                    to_qfmfo)
from msostr import syntax as S
from msostr.qe import (QF_FALSE, QF_TRUE, QfAnd, QfOr, UnaryLanguageClass,
                       k_gt_last, k_lt_last, qf_evaluate)

from corpus import AB, UNARY, sentence

INCLUDE = EpsilonMode.INCLUDE


def qe(text):
    return to_qfmfo(parse_formula(text, UNARY), UNARY)


def test_worked_example_open_formula():
    got = qe("ex1 x. x < y + 3 & z < x + 4 & z < y + 2 & y < x + 1")
    assert render_qf(got) == "z < y + 6 & y < y + 3 & z < y + 2"


def test_worked_example_three_quantifiers():
    assert render_qf(qe("ex1 x. ex1 y. ex1 z. x < y & y < z")) == "last > 1"


def test_worked_example_negated_inner():
    assert render_qf(qe("ex1 x. !(ex1 y. x < y) & x < 4")) == "last < 4"


def test_letter_atom_is_redundant():
    with_letter = qe("ex1 x. a(x) & y < x")
    without = qe("ex1 x. y < x")
    assert with_letter == without


def test_non_unary_alphabet_rejected():
    with pytest.raises(NonUnaryAlphabet):
        to_qfmfo(parse_formula("ex1 x. a(x)", AB), AB)


def test_second_order_rejected():
    with pytest.raises(SecondOrderPresent):
        to_qfmfo(parse_formula("ex2 X. all1 x. x in X", UNARY), UNARY)


@pytest.mark.parametrize("name", ["exactly_aa"])
def test_elimination_agrees_with_interpreter_on_corpus(name):
    phi, alphabet = sentence(name)
    q = to_qfmfo(phi, alphabet)
    for n in range(1, 11):
        assert qf_evaluate(q, n) == evaluate("a" * n, phi), n


@pytest.mark.parametrize("text", [
    "ex1 x. ex1 y. x < y",
    "all1 x. ex1 y. x < y | last(x)",
    "ex1 x. first(x) & x > 2",
    "all1 x. x < 4",
    "ex1 x. x = 3 & last(x)",
    "ex1 x. ex1 y. y = x + 2 & last(y) & x > 0",
    "all1 x. last(x) -> (ex1 y. y + 1 < x)",
    "ex1 x. 2 < x & x < 7",
])
def test_elimination_agrees_with_interpreter(text):
    phi = parse_formula(text, UNARY)
    q = to_qfmfo(phi, UNARY)
    for n in range(1, 11):
        assert qf_evaluate(q, n) == evaluate("a" * n, phi), (text, n)


def _open_formulas():
    fo_vars = st.sampled_from(("x", "y", "z"))
    nat = st.integers(min_value=0, max_value=4)
    atoms = st.one_of(
        st.builds(S.Less, fo_vars, fo_vars),
        st.builds(S.LessOffset, fo_vars, fo_vars, nat),
        st.builds(S.GreaterOffset, fo_vars, fo_vars, nat),
        st.builds(S.LessConst, fo_vars, nat),
        st.builds(S.GreaterConst, fo_vars, nat),
        st.builds(S.ConstLessLast, nat),
        st.builds(S.ConstGreaterLast, nat),
        st.builds(S.First, fo_vars),
        st.builds(S.Last, fo_vars),
        st.builds(S.Letter, st.just("a"), fo_vars),
        st.builds(S.EqConst, fo_vars, nat),
    )
    return st.recursive(
        atoms,
        lambda kids: st.one_of(
            st.builds(S.Not, kids),
            st.builds(S.Or, kids, kids),
            st.builds(S.And, kids, kids),
            st.builds(S.Implies, kids, kids),
            st.builds(S.ExistsFO, fo_vars, kids),
            st.builds(S.ForallFO, fo_vars, kids),
        ),
        max_leaves=8)


@settings(max_examples=150, deadline=None, derandomize=True)
@given(_open_formulas())
def test_elimination_property(phi):
    from msostr import free_vars
    q = to_qfmfo(phi, UNARY)
    names = sorted(free_vars(phi).fo)
    for n in (1, 2, 3, 5):
        for values in itertools.product(range(n), repeat=len(names)):
            nu = dict(zip(names, values))
            assert qf_evaluate(q, n, nu) == \
                evaluate("a" * n, phi, Assignment(nu1=nu)), (phi, n, nu)


def test_neg_of_lower_bound():
    got = neg_qf(k_lt_last(2))
    assert got == QfOr((k_gt_last(2), QfAnd((k_lt_last(1), k_gt_last(3)))))
    assert render_qf(got) == "last < 2 | (last > 1 & last < 3)"


def test_neg_of_upper_bound():
    got = neg_qf(k_gt_last(0))
    assert got == QfOr((k_lt_last(0), QfAnd((k_lt_last(-1), k_gt_last(1)))))
    for n in range(0, 7):
        assert qf_evaluate(got, n) != qf_evaluate(k_gt_last(0), n) or n == 0
    # on nonempty words the two are exact complements
    assert all(qf_evaluate(got, n) != qf_evaluate(k_gt_last(0), n)
               for n in range(1, 7))


def test_neg_is_involution_on_languages():
    phi = QfAnd((k_lt_last(1), k_gt_last(4)))
    assert classify(neg_qf(neg_qf(phi))) == classify(phi)


def test_neg_requires_sentence():
    with pytest.raises(OpenFormula):
        neg_qf(qe("y < 4 & ex1 x. x < y"))


def test_neg_complements_language():
    phi = QfOr((k_gt_last(2), k_lt_last(4)))
    negated = neg_qf(phi)
    for n in range(1, 10):
        assert qf_evaluate(negated, n) == (not qf_evaluate(phi, n)), n


def test_classify_upper_bound_with_empty_word():
    got = classify(k_gt_last(3), INCLUDE)
    assert got == UnaryLanguageClass("finite", frozenset({0, 1, 2, 3}))


def test_classify_upper_bound_default_universe():
    assert classify(k_gt_last(3)) == UnaryLanguageClass("finite", frozenset({1, 2, 3}))


def test_classify_band():
    got = classify(QfAnd((k_lt_last(2), k_gt_last(5))))
    assert got == UnaryLanguageClass("finite", frozenset({4, 5}))
    got_eps = classify(QfAnd((k_lt_last(2), k_gt_last(5))), INCLUDE)
    assert got_eps == UnaryLanguageClass("finite", frozenset({0, 4, 5}))


def test_classify_covering_disjunction():
    got = classify(QfOr((k_lt_last(1), k_gt_last(3))))
    assert got == UnaryLanguageClass("cofinite", frozenset())


def test_classify_matches_enumeration():
    for f in (k_lt_last(2), k_gt_last(4),
              QfAnd((k_lt_last(0), k_gt_last(6))),
              QfOr((k_gt_last(1), k_lt_last(5))),
              QF_TRUE, QF_FALSE):
        for mode in (EpsilonMode.EXCLUDE, INCLUDE):
            got = classify(f, mode)
            lo = 0 if mode is INCLUDE else 1
            for n in range(lo, 12):
                assert got.contains(n) == qf_evaluate(f, n), (f, mode, n)


def test_classify_requires_sentence():
    with pytest.raises(OpenFormula):
        classify(qe("y < 4"))


def test_classified_membership_eventually_constant():
    for f in (k_lt_last(3), QfAnd((k_lt_last(1), k_gt_last(4))),
              QfOr((k_gt_last(2), k_lt_last(0)))):
        got = classify(f)
        bound = got.eventually_constant_from()
        tail = {got.contains(n) for n in range(bound, bound + 5)}
        assert len(tail) == 1


def test_finite_sentence_singleton():
    phi = finite_sentence({2})
    assert render_qf(phi) == "last > 0 & last < 2"
    assert classify(phi) == UnaryLanguageClass("finite", frozenset({2}))
    for n in range(1, 8):
        assert qf_evaluate(phi, n) == (n == 2)


def test_finite_sentence_empty_set():
    phi = finite_sentence(set())
    assert phi == QF_FALSE
    assert classify(phi) == UnaryLanguageClass("finite", frozenset())


def test_finite_sentence_with_empty_word():
    phi = finite_sentence({0, 3}, INCLUDE)
    assert render_qf(phi) == "last > 1 & last < 3"
    assert classify(phi, INCLUDE) == UnaryLanguageClass("finite", frozenset({0, 3}))
    for n in range(0, 8):
        assert qf_evaluate(phi, n) == (n in (0, 3))


def test_finite_sentence_always_true_bound():
    phi = finite_sentence({1})
    assert render_qf(phi) == "last > -1 & last < 1"
    assert classify(phi) == UnaryLanguageClass("finite", frozenset({1}))


def test_finite_sentence_multiple_lengths():
    phi = finite_sentence({1, 4})
    assert classify(phi) == UnaryLanguageClass("finite", frozenset({1, 4}))


def test_finite_sentence_rejects_unrepresentable():
    with pytest.raises(ValueError):
        finite_sentence({0, 2})  # the empty word is outside the universe
    with pytest.raises(ValueError):
        finite_sentence({2, 5}, INCLUDE)  # every clause admits the empty word


def test_complement_via_neg_matches_finite_sentence():
    phi = finite_sentence({1, 3})
    complement = neg_qf(phi)
    got = classify(complement)
    assert got.tag == "cofinite"
    assert got == UnaryLanguageClass("cofinite", frozenset({1, 3}))


def test_qf_rebuilds_as_surface_formula():
    """Double-entry check: a quantifier-free result evaluated directly
    agrees with its surface form evaluated by the interpreter."""
    from msostr.qe import qf_to_formula
    from msostr import free_vars
    texts = [
        "ex1 x. x < y + 3 & z < x + 4 & z < y + 2 & y < x + 1",
        "ex1 x. ex1 y. ex1 z. x < y & y < z",
        "ex1 x. !(ex1 y. x < y) & x < 4",
        "all1 x. x < 3 | x > 1",
        "ex1 x. y + 3 < x & x < 9",
    ]
    for text in texts:
        phi = parse_formula(text, UNARY)
        q = to_qfmfo(phi, UNARY)
        surface = qf_to_formula(q)
        names = sorted(free_vars(surface).fo)
        for n in range(1, 8):
            for values in itertools.product(range(n), repeat=len(names)):
                nu = dict(zip(names, values))
                assert qf_evaluate(q, n, nu) == \
                    evaluate("a" * n, surface, Assignment(nu1=nu)), (text, n, nu)
