import pytest
from hypothesis import given, settings

from corpus import group
from strategies import dags
from triquiver.abelian import AbelianInvariants, abelianization
from triquiver.construction import build_free_block, build_group_pair, pentagon
from triquiver.cosets import todd_coxeter
from triquiver.errors import NonMinimalGenerator
from triquiver.fundamental import (
    Walk,
    chord_word,
    homotopy_classes,
    pi1_from_ideal,
    pi1_presentation,
    spanning_tree,
    walk_reduce,
)
from triquiver.pathalgebra import Arrow, BoundQuiver, Quiver, euler_characteristic, path_element
from triquiver.tietze import tietze_simplify


def undirected_acyclic(vertices, edges):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for s, t in edges:
        rs, rt = find(s), find(t)
        if rs == rt:
            return False
        parent[rs] = rt
    return True


@settings(max_examples=60, deadline=None)
@given(dags(max_vertices=12, max_extra=8))
def test_null_ideal_gives_free_group(q):
    g = pi1_presentation(BoundQuiver(q, (), q.vertices[0]))
    assert len(g.generators) == euler_characteristic(q)
    assert g.relators == ()


@settings(max_examples=40, deadline=None)
@given(dags(max_vertices=10))
def test_spanning_tree_invariants(q):
    t = spanning_tree(q, q.vertices[-1])
    assert len(t.arrows) == len(q.vertices) - 1
    edges = [(q.arrow(a).source, q.arrow(a).target) for a in t.arrows]
    assert undirected_acyclic(q.vertices, edges)
    assert len(t.chords) == euler_characteristic(q)
    for v in q.vertices:
        assert Walk(t.root, tuple(t.path_to_root(v))).end(q) == v


def test_walks():
    q, _, _ = pentagon()
    w = Walk("v", (("a", 1), ("d", 1)))
    assert w.end(q) == "z"
    assert walk_reduce(w.then(w.inverse(q))).steps == ()
    with pytest.raises(ValueError):
        Walk("u", (("a", 1),)).end(q)


def test_pentagon_ideals():
    q, ad, adbcd = pentagon()
    g1 = pi1_presentation(BoundQuiver(q, (ad,), "v"))
    assert g1.relators == () and abelianization(g1) == AbelianInvariants(1)
    g2 = pi1_presentation(BoundQuiver(q, (adbcd,), "v"))
    assert todd_coxeter(g2).verdict == "Finite(1)"


def test_free_block_two():
    b = build_free_block(2)
    free = pi1_presentation(b.bound_L)
    assert len(free.generators) == 2 and free.relators == ()
    assert todd_coxeter(pi1_presentation(b.bound_Lbar)).order == 1


def test_non_minimal_generator_is_named():
    q, ad, adbcd = pentagon()
    bq = BoundQuiver(q, (ad, adbcd), "v")
    with pytest.raises(NonMinimalGenerator) as info:
        pi1_presentation(bq)
    assert info.value.index == 1


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "S3", "Z^2", "klein"])
def test_base_point_independence(name):
    gp = build_group_pair(group(name))
    expected = abelianization(group(name))
    for v in (gp.quiver.vertices[0], gp.quiver.vertices[len(gp.quiver.vertices) // 2], gp.quiver.vertices[-1]):
        bq = BoundQuiver(gp.quiver, gp.J, v)
        assert abelianization(pi1_presentation(bq)) == expected


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "S3", "Z2*Z3"])
def test_generator_and_whole_ideal_modes_agree(name):
    gp = build_group_pair(group(name))
    a = abelianization(pi1_presentation(gp.bound_J))
    b = abelianization(pi1_from_ideal(gp.bound_J, "all"))
    assert a == b == abelianization(group(name))


@pytest.mark.parametrize("name", ["Z2", "Z4", "S3", "Z+Z2"])
def test_bar_side_is_trivial(name):
    gp = build_group_pair(group(name))
    assert todd_coxeter(tietze_simplify(pi1_from_ideal(gp.bound_Jbar, "local"))).order == 1


def test_homotopy_classes_square():
    q = Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "2", "4"),
                                      Arrow("c", "1", "3"), Arrow("d", "3", "4")))
    bq = BoundQuiver(q, (path_element(q, "a", "b") - path_element(q, "c", "d"),), "1")
    classes = homotopy_classes(bq, "1", "4")
    assert [sorted(map(str, c)) for c in classes] == [["a.b", "c.d"]]
    assert todd_coxeter(pi1_presentation(bq)).order == 1


def test_chord_words_are_left_arrows():
    gp = build_group_pair(group("S3"))
    tree = spanning_tree(gp.quiver, gp.base)
    n = gp.normalized.n
    assert tree.chords == tuple(f"l{i}" for i in range(1, n + 1))
    for i in range(1, n + 1):
        loop = Walk("x1", tuple((f"a{k}", 1) for k in range(1, i)) + ((f"r{i}", 1), (f"l{i}", 1), (f"a{i}", -1))
                    + tuple((f"a{k}", -1) for k in range(i - 1, 0, -1)))
        assert loop.end(gp.quiver) == "x1"
        assert chord_word(loop, tree) == ((f"l{i}", 1),)


def test_cyclic_two_presentation_collapses():
    gp = build_group_pair(group("Z2"))
    g = pi1_presentation(gp.bound_J)
    assert len(g.generators) == 2
    simple = tietze_simplify(g)
    assert len(simple.generators) == 1
    assert abelianization(simple) == AbelianInvariants(0, (2,))
