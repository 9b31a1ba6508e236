"""Quivers, paths and exact path-algebra arithmetic.

Elements of kQ are finite rational combinations of paths. Ideals are given
by generators; everything that needs the two-sided closure (membership,
rank, minimality) works one vertex pair at a time, since ``e_x I e_y`` is
spanned by the products ``u * g * v`` with u, v paths.
"""
from __future__ import annotations

import functools
import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DisconnectedError,
    NotInIdeal,
    OrientedCycleError,
    TermCapExceeded,
)
from .linalg import RowSpace, to_fraction


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an unknown endpoint")

    @functools.cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @functools.cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self.arrow_index[name]]

    @functools.cached_property
    def out_arrows(self) -> dict[str, tuple[Arrow, ...]]:
        out = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(out[v]) for v in self.vertices}

    def topological_order(self) -> list[str]:
        """Kahn's algorithm; raises OrientedCycleError on a directed cycle."""
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for a in self.out_arrows[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        if len(order) != len(self.vertices):
            raise OrientedCycleError("quiver has an oriented cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except OrientedCycleError:
            return False
        return True

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = defaultdict(set)
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.vertices)

    def paths_between(self, x: str, y: str) -> tuple["Path", ...]:
        """All paths x -> y in canonical order. Needs an acyclic quiver."""
        key = ("between", x, y)
        if key not in self._cache:
            self._cache[key] = tuple(sorted(
                (p for p in self.paths_from(x) if p.target == y), key=self.path_key))
        return self._cache[key]

    def paths_from(self, x: str) -> tuple["Path", ...]:
        key = ("from", x)
        if key in self._cache:
            return self._cache[key]
        self.topological_order()
        out = [Path(x, x, ())]
        stack = [(x, ())]
        while stack:
            v, arrows = stack.pop()
            for a in self.out_arrows[v]:
                nxt = arrows + (a.name,)
                out.append(Path(x, a.target, nxt))
                stack.append((a.target, nxt))
        out.sort(key=self.path_key)
        self._cache[key] = tuple(out)
        return self._cache[key]

    def path_key(self, p: "Path"):
        return (len(p.arrows), tuple(self.arrow_index[a] for a in p.arrows), self.vertex_index[p.source])

    def path_from_arrows(self, names: Iterable[str]) -> "Path":
        names = tuple(names)
        if not names:
            raise ValueError("use Path.stationary for the empty path")
        arrows = [self.arrow(n) for n in names]
        for u, v in zip(arrows, arrows[1:]):
            if u.target != v.source:
                raise ValueError(f"arrows {u.name} and {v.name} do not compose")
        return Path(arrows[0].source, arrows[-1].target, names)


@dataclass(frozen=True, order=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @classmethod
    def stationary(cls, v: str) -> "Path":
        return cls(v, v, ())

    def __len__(self) -> int:
        return len(self.arrows)

    def then(self, other: "Path") -> "Path | None":
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def __str__(self) -> str:
        return ".".join(self.arrows) if self.arrows else "@" + self.source


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class AlgebraElement:
    """A finite rational combination of paths. Treated as immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Path, object] | Iterable[tuple[Path, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, Fraction] = {}
        for p, c in items:
            c = _frac(c)
            if c:
                nc = acc.get(p, 0) + c
                if nc:
                    acc[p] = nc
                else:
                    acc.pop(p, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def of(cls, *paths: Path) -> "AlgebraElement":
        """Sum of the given paths, each with coefficient 1."""
        return cls((p, 1) for p in paths)

    @property
    def terms(self) -> dict[Path, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def paths(self) -> list[Path]:
        return list(self._terms)

    def coefficient(self, p: Path) -> Fraction:
        return self._terms.get(p, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        return AlgebraElement(itertools.chain(self._terms.items(), other._terms.items()))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement((p, -c) for p, c in self._terms.items())

    def scale(self, c) -> "AlgebraElement":
        c = _frac(c)
        return AlgebraElement((p, c * x) for p, x in self._terms.items())

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def endpoints(self) -> tuple[str, str] | None:
        """Common (source, target) of all terms, or None if not parallel."""
        ends = {(p.source, p.target) for p in self._terms}
        return next(iter(ends)) if len(ends) == 1 else None

    def sorted_terms(self, quiver: Quiver) -> list[tuple[Path, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: quiver.path_key(t[0]))

    def format(self, quiver: Quiver | None = None) -> str:
        items = self.sorted_terms(quiver) if quiver else sorted(self._terms.items())
        if not items:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in items)

    def __repr__(self):
        return f"AlgebraElement({self.format()})"


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of path composition; non-composable pairs give 0."""
    by_source = defaultdict(list)
    for q, d in v.items():
        by_source[q.source].append((q, d))
    out = []
    for p, c in u.items():
        for q, d in by_source.get(p.target, ()):
            out.append((Path(p.source, q.target, p.arrows + q.arrows), c * d))
    return AlgebraElement(out)


def product(*factors: AlgebraElement) -> AlgebraElement:
    return functools.reduce(multiply, factors)


def path_element(quiver: Quiver, *arrows: str, at: str | None = None) -> AlgebraElement:
    """The element given by a single path: arrow names, or the stationary path ``at``."""
    if not arrows:
        if at is None:
            raise ValueError("stationary path needs a vertex")
        return AlgebraElement.of(Path.stationary(at))
    return AlgebraElement.of(quiver.path_from_arrows(arrows))


Ideal = tuple  # tuple of AlgebraElement generators


@dataclass(frozen=True)
class BoundQuiver:
    quiver: Quiver
    ideal: tuple[AlgebraElement, ...]
    base: str

    def __post_init__(self):
        object.__setattr__(self, "ideal", tuple(self.ideal))
        if self.base not in self.quiver.vertex_index:
            raise ValueError(f"base vertex {self.base!r} not in quiver")
        for g in self.ideal:
            if not g:
                raise ValueError("zero ideal generator")
            if g.endpoints() is None:
                raise ValueError(f"ideal generator {g.format()} has non-parallel terms")
            for p in g:
                _check_path(self.quiver, p)

    def with_ideal(self, ideal) -> "BoundQuiver":
        return BoundQuiver(self.quiver, tuple(ideal), self.base)


def _check_path(quiver: Quiver, p: Path):
    if not p.arrows:
        if p.source != p.target or p.source not in quiver.vertex_index:
            raise ValueError(f"bad stationary path {p}")
        return
    q = quiver.path_from_arrows(p.arrows)
    if (q.source, q.target) != (p.source, p.target):
        raise ValueError(f"path {p} has wrong endpoints")


# ---------------------------------------------------------------- the ideal


class IdealSpan:
    """Per vertex-pair row spaces of the two-sided ideal of a bound quiver."""

    def __init__(self, bq: BoundQuiver):
        self.bq = bq
        self.quiver = bq.quiver
        self.quiver.topological_order()
        self._blocks: dict[tuple[str, str], tuple[tuple[Path, ...], dict, RowSpace]] = {}
        self._by_ends = defaultdict(list)
        for g in bq.ideal:
            self._by_ends[g.endpoints()].append(g)

    def block(self, x: str, y: str):
        """(paths x->y, column index, row space of I(x, y))."""
        key = (x, y)
        if key in self._blocks:
            return self._blocks[key]
        q = self.quiver
        paths = q.paths_between(x, y)
        col = {p: i for i, p in enumerate(paths)}
        space = RowSpace()
        for (s, t), gens in self._by_ends.items():
            lefts = q.paths_between(x, s)
            if not lefts:
                continue
            rights = q.paths_between(t, y)
            for u in lefts:
                for v in rights:
                    for g in gens:
                        vec = {}
                        for p, c in g.items():
                            j = col[Path(x, y, u.arrows + p.arrows + v.arrows)]
                            vec[j] = vec.get(j, 0) + c
                        space.add(vec)
        self._blocks[key] = (paths, col, space)
        return self._blocks[key]

    def pairs(self) -> list[tuple[str, str]]:
        """Vertex pairs with at least one path, in a fixed order."""
        q = self.quiver
        return [(x, y) for x in q.vertices for y in q.vertices if q.paths_between(x, y)]

    def local_pairs(self) -> list[tuple[str, str]]:
        """Endpoint pairs of the generators."""
        return list(dict.fromkeys(g.endpoints() for g in self.bq.ideal))

    def contains(self, e: AlgebraElement) -> bool:
        parts = defaultdict(dict)
        for p, c in e.items():
            parts[(p.source, p.target)][p] = c
        for (x, y), terms in parts.items():
            _, col, space = self.block(x, y)
            vec = {}
            for p, c in terms.items():
                if p not in col:
                    raise ValueError(f"{p} is not a path of the quiver")
                vec[col[p]] = c
            if space.reduce(vec):
                return False
        return True

    def block_rank(self, x: str, y: str) -> int:
        return self.block(x, y)[2].rank


@functools.lru_cache(maxsize=64)
def ideal_span(bq: BoundQuiver) -> IdealSpan:
    return IdealSpan(bq)


def enumerate_paths(q: Quiver) -> list[Path]:
    """Every path of an acyclic quiver, stationary ones included, canonical order."""
    q.topological_order()
    out = [p for v in q.vertices for p in q.paths_from(v)]
    return sorted(out, key=q.path_key)


def ideal_membership(e: AlgebraElement, bq: BoundQuiver) -> bool:
    return ideal_span(bq).contains(e)


def is_admissible(bq: BoundQuiver) -> bool:
    """Generators inside F^2; F^m lies in I automatically for acyclic quivers."""
    bq.quiver.topological_order()
    return all(len(p) >= 2 for g in bq.ideal for p in g)


def is_minimal_relation(e: AlgebraElement, bq: BoundQuiver, max_terms: int = 12) -> bool:
    if e.endpoints() is None:
        raise ValueError("relation terms are not parallel")
    if len(e) > max_terms:
        raise TermCapExceeded(f"{len(e)} terms exceed the cap of {max_terms}")
    span = ideal_span(bq)
    if not span.contains(e):
        raise NotInIdeal(e.format(bq.quiver))
    if len(e) < 2:
        return False
    items = e.sorted_terms(bq.quiver)
    for k in range(1, len(items)):
        for sub in itertools.combinations(items, k):
            if span.contains(AlgebraElement(sub)):
                return False
    return True


def quotient_dimension(bq: BoundQuiver) -> int:
    span = ideal_span(bq)
    total = 0
    for x, y in span.pairs():
        paths, _, space = span.block(x, y)
        total += len(paths) - space.rank
    return total


def euler_characteristic(q: Quiver) -> int:
    if not q.is_connected():
        raise DisconnectedError("quiver is not connected")
    return len(q.arrows) - len(q.vertices) + 1


def _support_space_dim(space: RowSpace, cols: set[int]) -> tuple[int, dict | None]:
    """Dimension of {v in span : supp(v) within cols}, with one such vector."""
    basis = list(space.rows.values())
    width = 1 + max((c for row in basis for c in row), default=0)
    # eliminate on [row restricted outside cols | unit tag]; tags of rows
    # whose outside part dies are the kernel of the restriction
    aug = RowSpace()
    kernel = []
    for i, row in enumerate(basis):
        vec = {c: x for c, x in row.items() if c not in cols}
        vec[width + i] = 1
        r = aug.reduce(vec)
        if min(r) < width:
            aug.add(r)
        else:
            kernel.append(r)
    if not kernel:
        return 0, None
    out = defaultdict(Fraction)
    for j, x in kernel[0].items():
        for c, y in basis[j - width].items():
            out[c] += to_fraction(x * y)
    return len(kernel), {c: x for c, x in out.items() if x}


def find_minimal_relations(bq: BoundQuiver, max_terms: int = 4, pairs=None) -> list[AlgebraElement]:
    """Minimal relations with at most ``max_terms`` terms, up to scalars.

    Returns the elements of minimal support (circuits) of each block
    ``I(x, y)``; every such element is a minimal relation, and their
    supports connect exactly the paths that minimal relations connect.
    """
    span = ideal_span(bq)
    found = []
    for x, y in (pairs if pairs is not None else span.pairs()):
        paths, _, space = span.block(x, y)
        if not space.rank:
            continue
        live = sorted({c for row in space.rows.values() for c in row})
        circuits: list[frozenset[int]] = []
        for k in range(2, max_terms + 1):
            for sub in itertools.combinations(live, k):
                s = frozenset(sub)
                if any(c <= s for c in circuits):
                    continue
                dim, vec = _support_space_dim(space, s)
                if dim == 1 and set(vec) == s:
                    circuits.append(s)
                    lead = vec[min(vec)]
                    found.append(AlgebraElement((paths[c], v / lead) for c, v in vec.items()))
    return found


# ------------------------------------------------------------ substitutions


class ArrowSubstitution:
    """An algebra endomorphism of kQ fixing vertices, given on arrows.

    Arrows absent from ``images`` map to themselves.
    """

    def __init__(self, quiver: Quiver, images: Mapping[str, AlgebraElement] | None = None):
        self.quiver = quiver
        self.images: dict[str, AlgebraElement] = {}
        for name, img in (images or {}).items():
            if img != self._arrow_elem(name):
                self.images[name] = img
        self._path_cache: dict[Path, AlgebraElement] = {}

    def _arrow_elem(self, name: str) -> AlgebraElement:
        a = self.quiver.arrow(name)
        return AlgebraElement.of(Path(a.source, a.target, (name,)))

    def image(self, name: str) -> AlgebraElement:
        return self.images.get(name) or self._arrow_elem(name)

    def validate(self) -> list[str]:
        """Problems with the unipotent shape; empty when well formed."""
        problems = []
        for name, img in self.images.items():
            a = self.quiver.arrow(name)
            for p, c in img.items():
                if (p.source, p.target) != (a.source, a.target):
                    problems.append(f"{name}: term {p} is not parallel")
                elif len(p) == 1 and (p.arrows != (name,) or c != 1):
                    problems.append(f"{name}: length-1 part must be the arrow itself")
                elif len(p) == 0:
                    problems.append(f"{name}: stationary term")
            if img.coefficient(Path(a.source, a.target, (name,))) != 1:
                problems.append(f"{name}: arrow coefficient is not 1")
        return problems

    def apply_path(self, p: Path) -> AlgebraElement:
        if not p.arrows or not any(a in self.images for a in p.arrows):
            return AlgebraElement.of(p)
        hit = self._path_cache.get(p)
        if hit is None:
            hit = product(*(self.image(a) for a in p.arrows))
            self._path_cache[p] = hit
        return hit

    def apply(self, e: AlgebraElement) -> AlgebraElement:
        out = []
        for p, c in e.items():
            for q, d in self.apply_path(p).items():
                out.append((q, c * d))
        return AlgebraElement(out)

    __call__ = apply

    def compose(self, inner: "ArrowSubstitution") -> "ArrowSubstitution":
        """self o inner: each arrow goes to self(inner(arrow))."""
        return compose_substitutions(self, inner)

    def is_identity(self) -> bool:
        return not self.images

    def inverse(self) -> "ArrowSubstitution":
        """Inverse of a unipotent substitution on an acyclic quiver.

        Solves t(a) = a - t(s(a) - a); the correction only involves arrows
        on strictly shorter intervals, so the recursion terminates.
        """
        memo: dict[str, AlgebraElement] = {}

        def inv(name: str) -> AlgebraElement:
            if name in memo:
                return memo[name]
            base = self._arrow_elem(name)
            if name not in self.images:
                memo[name] = base
                return base
            rest = self.images[name] - base
            out = []
            for p, c in rest.items():
                for q, d in product(*(inv(a) for a in p.arrows)).items():
                    out.append((q, -c * d))
            memo[name] = base + AlgebraElement(out)
            return memo[name]

        return ArrowSubstitution(self.quiver, {a: inv(a) for a in self.images})

    def __eq__(self, other):
        if not isinstance(other, ArrowSubstitution):
            return NotImplemented
        return self.quiver == other.quiver and self.images == other.images

    def __repr__(self):
        body = ", ".join(f"{k} -> {v.format(self.quiver)}" for k, v in self.images.items())
        return f"ArrowSubstitution({body})"


def apply_substitution(s: ArrowSubstitution, e: AlgebraElement) -> AlgebraElement:
    return s.apply(e)


def compose_substitutions(outer: ArrowSubstitution, inner: ArrowSubstitution) -> ArrowSubstitution:
    q = outer.quiver
    names = list(dict.fromkeys(list(inner.images) + list(outer.images)))
    return ArrowSubstitution(q, {n: outer.apply(inner.image(n)) for n in names})


def transvection(quiver: Quiver, arrow: str, rho: AlgebraElement) -> ArrowSubstitution:
    """arrow -> arrow + rho, everything else fixed."""
    a = quiver.arrow(arrow)
    return ArrowSubstitution(quiver, {arrow: AlgebraElement.of(Path(a.source, a.target, (arrow,))) + rho})


def negated(s: ArrowSubstitution) -> ArrowSubstitution:
    """a -> a - rho for every a -> a + rho of ``s``."""
    out = {}
    for name, img in s.images.items():
        base = s._arrow_elem(name)
        out[name] = base - (img - base)
    return ArrowSubstitution(s.quiver, out)


def reverse_negated(factors: list[ArrowSubstitution]) -> ArrowSubstitution:
    """Inverse candidate for f_n o ... o f_1 given ``factors = [f_1, ..., f_n]``.

    Builds neg(f_1) o ... o neg(f_n); exact inverse when each factor is a
    transvection whose correction avoids its own arrow.
    """
    out = ArrowSubstitution(factors[0].quiver) if factors else None
    for f in factors:
        out = compose_substitutions(out, negated(f))
    return out


def compose_all(factors: list[ArrowSubstitution]) -> ArrowSubstitution:
    """f_n o ... o f_1 for ``factors = [f_1, ..., f_n]``."""
    out = ArrowSubstitution(factors[0].quiver)
    for f in factors:
        out = compose_substitutions(f, out)
    return out
