import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import dags, random_relations
from triquiver.construction import pentagon
from triquiver.errors import OrientedCycleError, TermCapExceeded
from triquiver.pathalgebra import (
    Arrow,
    BoundQuiver,
    Quiver,
    compose_all,
    enumerate_paths,
    euler_characteristic,
    find_minimal_relations,
    ideal_membership,
    is_admissible,
    is_minimal_relation,
    path_element,
    quotient_dimension,
    reverse_negated,
    transvection,
)


def as_oracle(e):
    return {(p.source, p.target, tuple(p.arrows)): c for p, c in e.items()}


def raw(q):
    return list(q.vertices), [(a.name, a.source, a.target) for a in q.arrows]


def square():
    q = Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "2", "4"),
                                      Arrow("c", "1", "3"), Arrow("d", "3", "4")))
    return q


def test_paths_of_pentagon():
    q, _, _ = pentagon()
    paths = enumerate_paths(q)
    assert len(paths) == len(oracles.all_paths(*raw(q)))
    assert {str(p) for p in paths if len(p) == 3} == {"b.c.d"}


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(("x",), (Arrow("a", "x", "nowhere"),))
    with pytest.raises(ValueError):
        Quiver(("x", "x"), ())
    cyc = Quiver(("x", "y"), (Arrow("a", "x", "y"), Arrow("b", "y", "x")))
    assert not cyc.is_acyclic()
    with pytest.raises(OrientedCycleError):
        cyc.topological_order()


def test_euler_characteristic():
    q, _, _ = pentagon()
    assert euler_characteristic(q) == 1
    assert euler_characteristic(square()) == 1


def test_membership_and_admissibility_square():
    q = square()
    comm = path_element(q, "a", "b") - path_element(q, "c", "d")
    bq = BoundQuiver(q, (comm,), "1")
    assert is_admissible(bq)
    assert ideal_membership(comm.scale(3), bq)
    assert not ideal_membership(path_element(q, "a", "b"), bq)
    assert is_minimal_relation(comm, bq)
    assert quotient_dimension(bq) == 4 + 4 + 1
    # a length-one term is never admissible
    assert not is_admissible(BoundQuiver(q, (path_element(q, "a"),), "1"))


def test_minimality_detects_monomial_subsum():
    q = square()
    ab, cd = path_element(q, "a", "b"), path_element(q, "c", "d")
    bq = BoundQuiver(q, (ab, cd), "1")
    assert not is_minimal_relation(ab + cd, bq)
    assert not is_minimal_relation(ab, bq)  # one term


def test_term_cap():
    q = square()
    e = path_element(q, "a", "b") + path_element(q, "c", "d")
    with pytest.raises(TermCapExceeded):
        is_minimal_relation(e, BoundQuiver(q, (e,), "1"), max_terms=1)


def test_find_minimal_relations_pentagon():
    q, ad, adbcd = pentagon()
    found = find_minimal_relations(BoundQuiver(q, (adbcd,), "v"))
    assert found and all(len(e) == 2 for e in found)
    assert not find_minimal_relations(BoundQuiver(q, (ad,), "v"))


@settings(max_examples=40, deadline=None)
@given(dags(), st.integers(0, 10**6))
def test_membership_matches_dense_oracle(q, seed):
    rnd = random.Random(seed)
    if len(enumerate_paths(q)) > 40:
        return
    gens = tuple(random_relations(q, rnd, 2))
    bq = BoundQuiver(q, gens, q.vertices[0])
    _, col, rows = oracles.span_matrix(*raw(q), [as_oracle(g) for g in gens])
    cands = random_relations(q, rnd, 4) + [g.scale(2) for g in gens]
    if len(gens) == 2 and gens[0].endpoints() == gens[1].endpoints():
        cands.append(gens[0] - gens[1])
    for e in cands:
        vec = [0] * len(col)
        for key, c in as_oracle(e).items():
            vec[col[key]] = c
        assert ideal_membership(e, bq) == oracles.in_span(rows, vec)


@settings(max_examples=30, deadline=None)
@given(dags(), st.integers(0, 10**6))
def test_quotient_dimension_matches_dense_rank(q, seed):
    rnd = random.Random(seed)
    if len(enumerate_paths(q)) > 40:
        return
    gens = tuple(random_relations(q, rnd, 2))
    paths, _, rows = oracles.span_matrix(*raw(q), [as_oracle(g) for g in gens])
    assert quotient_dimension(BoundQuiver(q, gens, q.vertices[0])) == len(paths) - oracles.dense_rank(rows)


def test_transvection_inverse_and_composition():
    q = Quiver(("1", "2", "3"), (Arrow("a", "1", "3"), Arrow("b", "1", "2"), Arrow("c", "2", "3")))
    t = transvection(q, "a", path_element(q, "b", "c").scale(Fraction(5, 2)))
    assert t.validate() == []
    assert t.inverse().compose(t).is_identity()
    assert reverse_negated([t]).compose(t).is_identity()
    assert compose_all([t, t]).image("a") == path_element(q, "a") + path_element(q, "b", "c").scale(5)


def test_transvection_flags_nonparallel():
    q = square()
    assert transvection(q, "a", path_element(q, "c", "d")).validate()
