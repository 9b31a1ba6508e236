"""Smith normal form, coset enumeration and Tietze moves against sympy."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from corpus import EXPECTED, corpus, group
from triquiver.abelian import AbelianInvariants, abelianization, relation_matrix, smith_diagonal
from triquiver.cosets import todd_coxeter
from triquiver.presentations import FPGroup, parse_presentation
from triquiver.tietze import tietze_simplify

matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_smith_matches_sympy(m):
    assert smith_diagonal(m) == oracles.sympy_invariants(m)


@given(matrices)
def test_smith_is_a_divisibility_chain(m):
    d = smith_diagonal(m)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@pytest.mark.parametrize("name", list(EXPECTED))
def test_abelianization_of_corpus(name):
    (rank, tors), _ = EXPECTED[name]
    assert abelianization(group(name)) == AbelianInvariants(rank, tors)


def test_relation_matrix():
    assert relation_matrix(group("Z+Z2")) == [[0, 0], [2, 0]]


FINITE = [
    "generators: a b\nrelators: a^2; b^3; a*b*a*b\n",
    "generators: a\nrelators: a^4\n",
    "generators: a b\nrelators: a^2; b^2; a*b*a*b*a*b\n",
    "generators: a b\nrelators: a^3; b^3; a*b*a*b\n",
    "generators: a b\nrelators: a^4; b^2; a*b*a*b\n",
    "generators: a b c\nrelators: a^2; b^2; c^2; a*b*a*b; b*c*b*c*b*c; a*c*a*c\n",
    "generators: a\nrelators: a\n",
    "generators: a b\nrelators: a^5; b; a*b\n",
]


@pytest.mark.parametrize("text", FINITE)
def test_coset_order_matches_sympy(text):
    g = parse_presentation(text)
    res = todd_coxeter(g)
    assert res.finite
    assert res.order == oracles.sympy_order(g.generators, g.relators)


def test_inconclusive_for_infinite():
    res = todd_coxeter(group("Z^2"), max_cosets=500)
    assert not res.finite and res.verdict == "Inconclusive(500)"


@pytest.mark.parametrize("name", list(corpus()))
def test_tietze_keeps_invariants(name):
    g = group(name)
    simple = tietze_simplify(g)
    assert abelianization(simple) == abelianization(g)
    order = EXPECTED[name][1]
    if order is not None:
        assert todd_coxeter(simple).order == order


def test_tietze_eliminates_defined_generator():
    g = FPGroup(("a", "b"), ((("a", 1), ("b", -1)), (("a", 3),)))
    simple = tietze_simplify(g)
    assert len(simple.generators) == 1
    assert todd_coxeter(simple).order == 3


def test_tietze_small_cases():
    g = FPGroup(("a", "b"), ((("b", 1), ("a", 1), ("a", -1)),))
    assert tietze_simplify(g) == FPGroup(("a",), ())
    g = FPGroup(("a",), ((("a", 1), ("a", -1)),))
    assert tietze_simplify(g) == FPGroup(("a",), ())


def test_free_cyclic_group_is_inconclusive():
    assert todd_coxeter(FPGroup(("a",), ()), max_cosets=1000).verdict == "Inconclusive(1000)"
    assert todd_coxeter(parse_presentation("generators: a\nrelators: a\n")).verdict == "Finite(1)"
