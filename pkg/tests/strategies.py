"""Hypothesis strategies and random inputs shared by several test files."""
from fractions import Fraction

from hypothesis import strategies as st

from triquiver.pathalgebra import AlgebraElement, Arrow, Quiver, enumerate_paths


@st.composite
def dags(draw, max_vertices=6, max_extra=5):
    n = draw(st.integers(1, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    arrows = []
    for k in range(1, n):
        j = draw(st.integers(0, k - 1))
        arrows.append((vs[j], vs[k]) if draw(st.booleans()) else (vs[k], vs[j]))
    if n > 1:
        for _ in range(draw(st.integers(0, max_extra))):
            i, j = sorted(draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True)))
            arrows.append((vs[i], vs[j]))
    # orient by index after a random relabelling so the result is acyclic
    perm = draw(st.permutations(range(n)))
    rank = {vs[k]: perm[k] for k in range(n)}
    oriented = [(s, t) if rank[s] < rank[t] else (t, s) for s, t in arrows]
    return Quiver(tuple(vs), tuple(Arrow(f"e{k}", s, t) for k, (s, t) in enumerate(oriented)))


def random_relations(q, rnd, count):
    """Random parallel combinations of paths of length >= 2."""
    out = []
    long = [p for p in enumerate_paths(q) if len(p) >= 2]
    for _ in range(count):
        if not long:
            break
        p = rnd.choice(long)
        par = [r for r in long if r.source == p.source and r.target == p.target]
        pick = rnd.sample(par, min(len(par), rnd.randint(1, 3)))
        e = AlgebraElement([(r, Fraction(rnd.randint(-3, 3) or 1)) for r in pick])
        if e:
            out.append(e)
    return out
