"""Fundamental group of a bound quiver.

Walks are words in arrows and formal inverses. Contracting a spanning tree
of the underlying graph identifies closed walks at the base with words in
the chords, so pi_1(Q, I) is the free group on the chords modulo one
relator per pair of homotopic terms of a minimal relation.

Two ways of producing those relators:

* ``pi1_presentation`` uses the supplied ideal generators, each checked to
  be a minimal relation (monomial generators contribute nothing);
* ``pi1_from_ideal`` reads the minimal relations off every block I(x, y):
  two paths are homotopic through minimal relations exactly when they lie
  in one connected component of the support matroid of I(x, y).

The second is the definition itself and needs no assumption on the
generators. Restricted to the generator blocks (``blocks="local"``) it
yields a presentation of a group that surjects onto pi_1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DisconnectedError, NonMinimalGenerator, TermCapExceeded
from .pathalgebra import BoundQuiver, Path, Quiver, ideal_span, is_minimal_relation
from .presentations import FPGroup
from .words import Word, from_letters, invert, mul, reduce_word

FORWARD, BACKWARD = 1, -1


@dataclass(frozen=True)
class Walk:
    start: str
    steps: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_path(cls, p: Path) -> "Walk":
        return cls(p.source, tuple((a, FORWARD) for a in p.arrows))

    def end(self, q: Quiver) -> str:
        v = self.start
        for name, d in self.steps:
            a = q.arrow(name)
            if d == FORWARD:
                if a.source != v:
                    raise ValueError(f"step {name} does not start at {v}")
                v = a.target
            else:
                if a.target != v:
                    raise ValueError(f"step {name}^-1 does not start at {v}")
                v = a.source
        return v

    def inverse(self, q: Quiver) -> "Walk":
        return Walk(self.end(q), tuple((a, -d) for a, d in reversed(self.steps)))

    def then(self, other: "Walk") -> "Walk":
        return Walk(self.start, self.steps + other.steps)

    def __len__(self):
        return len(self.steps)


def walk_reduce(w: Walk) -> Walk:
    """Cancel adjacent alpha alpha^-1 and alpha^-1 alpha."""
    stack = []
    for a, d in w.steps:
        if stack and stack[-1] == (a, -d):
            stack.pop()
        else:
            stack.append((a, d))
    return Walk(w.start, tuple(stack))


@dataclass(frozen=True)
class SpanningTree:
    root: str
    arrows: frozenset
    parent: dict  # vertex -> (arrow, direction of the step from parent)
    prev: dict  # vertex -> parent vertex
    chords: tuple[str, ...]

    def path_to_root(self, v: str) -> list[tuple[str, int]]:
        """Steps of the tree walk root -> v."""
        steps = []
        while v != self.root:
            arrow, d = self.parent[v]
            steps.append((arrow, d))
            v = self.prev[v]
        return steps[::-1]


def spanning_tree(q: Quiver, base: str) -> SpanningTree:
    """Breadth-first tree from ``base``, scanning arrows in quiver order."""
    incident: dict[str, list] = {v: [] for v in q.vertices}
    for a in q.arrows:
        incident[a.source].append(a)
        if a.target != a.source:
            incident[a.target].append(a)
    parent = {}
    prev = {}
    seen = {base}
    tree = set()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for a in incident[v]:
            w, d = (a.target, FORWARD) if a.source == v else (a.source, BACKWARD)
            if w in seen:
                continue
            seen.add(w)
            tree.add(a.name)
            parent[w] = (a.name, d)
            prev[w] = v
            queue.append(w)
    if len(seen) != len(q.vertices):
        raise DisconnectedError("quiver is not connected")
    chords = tuple(a.name for a in q.arrows if a.name not in tree)
    return SpanningTree(base, frozenset(tree), parent, prev, chords)


def chord_word(w: Walk, tree: SpanningTree) -> Word:
    """Image of a walk in the free group on the chords.

    Tree arrows map to the identity, so an open walk is read as if closed
    up through the tree at both ends.
    """
    return from_letters((a, d) for a, d in w.steps if a not in tree.arrows)


def path_word(p: Path, tree: SpanningTree) -> Word:
    return from_letters((a, FORWARD) for a in p.arrows if a not in tree.arrows)


@dataclass
class DerivationEntry:
    generator: int
    first: Path
    other: Path
    first_word: Word
    other_word: Word
    relator: Word


def pi1_presentation(bq: BoundQuiver, check_minimal: bool = True, max_terms: int = 12,
                     tree: SpanningTree | None = None, log: list | None = None) -> FPGroup:
    """pi_1 from the ideal generators, assumed (and by default checked) minimal.

    For a generator with terms w_1..w_m in canonical order the relators are
    word(w_1) word(w_j)^-1 for j = 2..m.
    """
    q = bq.quiver
    tree = tree or spanning_tree(q, bq.base)
    relators = []
    for k, g in enumerate(bq.ideal):
        if len(g) < 2:
            continue  # monomials are never minimal relations
        if check_minimal:
            try:
                minimal = is_minimal_relation(g, bq, max_terms=max_terms)
            except TermCapExceeded as exc:
                raise TermCapExceeded(f"ideal generator #{k}: {exc}") from None
            if not minimal:
                raise NonMinimalGenerator(k, g.format(q))
        terms = [p for p, _ in g.sorted_terms(q)]
        first = path_word(terms[0], tree)
        for p in terms[1:]:
            other = path_word(p, tree)
            rel = mul(first, invert(other))
            if log is not None:
                log.append(DerivationEntry(k, terms[0], p, first, other, rel))
            if rel:
                relators.append(rel)
    return FPGroup(tree.chords, tuple(relators))


def homotopy_classes(bq: BoundQuiver, x: str, y: str) -> list[list[Path]]:
    """Paths x -> y grouped by homotopy through minimal relations in I(x, y)."""
    paths, _, space = ideal_span(bq).block(x, y)
    return [[paths[c] for c in comp] for comp in space.components(len(paths)) if len(comp) > 1]


def pi1_from_ideal(bq: BoundQuiver, blocks: str = "all", tree: SpanningTree | None = None) -> FPGroup:
    """pi_1 from the minimal relations of every block of the ideal.

    ``blocks="all"`` scans every vertex pair and gives pi_1 exactly;
    ``blocks="local"`` scans only the generators' own endpoint pairs.
    Duplicate relators are dropped.
    """
    q = bq.quiver
    tree = tree or spanning_tree(q, bq.base)
    span = ideal_span(bq)
    pairs = span.pairs() if blocks == "all" else span.local_pairs()
    seen = set()
    relators = []
    for x, y in pairs:
        _, _, space = span.block(x, y)
        if not space.rank:
            continue
        for cls in homotopy_classes(bq, x, y):
            first = path_word(cls[0], tree)
            for p in cls[1:]:
                rel = reduce_word(mul(first, invert(path_word(p, tree))))
                if rel and rel not in seen:
                    seen.add(rel)
                    relators.append(rel)
    return FPGroup(tree.chords, tuple(relators))
