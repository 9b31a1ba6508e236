"""Bound quivers realizing a finitely presented group and the trivial group.

For a normalized presentation with generators w_1..w_n the quiver Q_H is a
chain of n triangles

    r_i : x_i -> y_i,   l_i : y_i -> x_{i+1},   a_i : x_i -> x_{i+1}

and with A_i = r_i l_i the ideal I has one binomial per relation:

    lasso [i..j]        a_i ... a_j + A_i ... A_j
    cross-lasso (i, j)  a_i m_ij A_j + A_i m_ij a_j,   m_ij = a_{i+1} ... a_{j-1}

The killing automorphism sends every a_i to a_i + A_i; its image of I has
trivial fundamental group.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CoverageGap, EmptyPresentation, IndexMismatch
from .pathalgebra import (
    AlgebraElement,
    Arrow,
    ArrowSubstitution,
    BoundQuiver,
    Path,
    Quiver,
    compose_all,
    is_admissible,
    is_minimal_relation,
    reverse_negated,
    transvection,
)
from .presentations import (
    FPGroup,
    NormalizedPresentation,
    normalize,
    split_free_generators,
    to_positive,
)


@dataclass(frozen=True)
class TriangleChain:
    n: int
    quiver: Quiver

    @property
    def base(self) -> str:
        return "x1"

    def x(self, i): return f"x{i}"
    def y(self, i): return f"y{i}"
    def r(self, i): return f"r{i}"
    def l(self, i): return f"l{i}"
    def a(self, i): return f"a{i}"

    def a_path(self, i: int) -> Path:
        return Path(self.x(i), self.x(i + 1), (self.a(i),))

    def A_path(self, i: int) -> Path:
        return Path(self.x(i), self.x(i + 1), (self.r(i), self.l(i)))

    def m(self, i: int, j: int) -> Path:
        """a_{i+1} ... a_{j-1}; the stationary path at x_{i+1} when j = i + 1."""
        return Path(self.x(i + 1), self.x(j), tuple(self.a(k) for k in range(i + 1, j)))

    def m0(self, i: int) -> Path:
        """Tree path x_1 -> x_i, i.e. a_1 ... a_{i-1}."""
        return self.m(0, i)

    def concat(self, *paths: Path) -> Path:
        out = paths[0]
        for p in paths[1:]:
            out = out.then(p)
            if out is None:
                raise ValueError("paths do not compose")
        return out


def build_quiver_H(np: NormalizedPresentation) -> TriangleChain:
    n = np.n
    if n < 1:
        raise EmptyPresentation("normalized presentation has no generators")
    vertices = [f"x{i}" for i in range(1, n + 2)] + [f"y{i}" for i in range(1, n + 1)]
    arrows = []
    for i in range(1, n + 1):
        arrows += [Arrow(f"r{i}", f"x{i}", f"y{i}"),
                   Arrow(f"l{i}", f"y{i}", f"x{i + 1}"),
                   Arrow(f"a{i}", f"x{i}", f"x{i + 1}")]
    return TriangleChain(n, Quiver(tuple(vertices), tuple(arrows)))


def lasso_element(tc: TriangleChain, i: int, j: int) -> AlgebraElement:
    low = tc.concat(*(tc.a_path(k) for k in range(i, j + 1)))
    high = tc.concat(*(tc.A_path(k) for k in range(i, j + 1)))
    return AlgebraElement.of(low, high)


def cross_lasso_element(tc: TriangleChain, i: int, j: int) -> AlgebraElement:
    m = tc.m(i, j)
    return AlgebraElement.of(tc.concat(tc.a_path(i), m, tc.A_path(j)),
                             tc.concat(tc.A_path(i), m, tc.a_path(j)))


def build_ideal_I(np: NormalizedPresentation, tc: TriangleChain) -> tuple[AlgebraElement, ...]:
    """Lasso generators first, then cross-lassos, each in the given order."""
    if np.n != tc.n:
        raise IndexMismatch(f"presentation has n = {np.n}, quiver has {tc.n} triangles")
    gens = [lasso_element(tc, i, j) for i, j in np.lassos]
    gens += [cross_lasso_element(tc, i, j) for i, j in np.cross_lassos]
    return tuple(gens)


def _A_element(tc: TriangleChain, i: int) -> AlgebraElement:
    return AlgebraElement.of(tc.A_path(i))


def gamma_bar_factors(np: NormalizedPresentation, tc: TriangleChain) -> list[ArrowSubstitution]:
    """The transvections a_i -> a_i + A_i, lasso by lasso, in application order."""
    seen = set()
    factors = []
    for i, j in np.lassos:
        for k in range(i, j + 1):
            seen.add(k)
            factors.append(transvection(tc.quiver, tc.a(k), _A_element(tc, k)))
    missing = sorted(set(range(1, tc.n + 1)) - seen)
    if missing:
        raise CoverageGap(f"indices {missing} lie in no lasso")
    return factors


def build_gamma_bar(np: NormalizedPresentation, tc: TriangleChain) -> ArrowSubstitution:
    """Simultaneous substitution a_i -> a_i + A_i.

    Equal to the composite of the per-lasso transvections: they move
    distinct arrows and no A_i contains an a-arrow.
    """
    gamma_bar_factors(np, tc)  # coverage check
    images = {tc.a(k): AlgebraElement.of(tc.a_path(k), tc.A_path(k)) for k in range(1, tc.n + 1)}
    return ArrowSubstitution(tc.quiver, images)


@dataclass
class KilledFormEntry:
    lasso: tuple[int, int]
    passed: bool
    gamma_size: int
    detail: str = ""


def check_killed_form(np: NormalizedPresentation, tc: TriangleChain, gb: ArrowSubstitution) -> list[KilledFormEntry]:
    """Compare gamma_bar(W) with its closed form for every lasso W.

    Expected: the all-lowercase path and each single-capital path with
    coefficient 1, and a remainder whose paths all carry two or more A's.
    """
    report = []
    for i, j in np.lassos:
        image = gb.apply(lasso_element(tc, i, j))
        r_names = {tc.r(k) for k in range(i, j + 1)}
        length = j - i + 1
        low = tc.concat(*(tc.a_path(k) for k in range(i, j + 1)))
        singles = [tc.concat(*(tc.A_path(k) if k == t else tc.a_path(k) for k in range(i, j + 1)))
                   for t in range(i, j + 1)]
        problems = []
        if image.coefficient(low) != 1:
            problems.append("lowercase term missing")
        for s in singles:
            if image.coefficient(s) != 1:
                problems.append(f"single-capital term {s} has coefficient {image.coefficient(s)}")
        rest = [p for p in image if p != low and p not in singles]
        for p in rest:
            caps = sum(1 for a in p.arrows if a in r_names)
            if caps < 2:
                problems.append(f"remainder term {p} has {caps} capitals")
        expected = 2 ** length - length - 1
        if len(rest) != expected:
            problems.append(f"remainder has {len(rest)} terms, expected {expected}")
        report.append(KilledFormEntry((i, j), not problems, len(rest), "; ".join(problems)))
    return report


@dataclass
class ConstructionPair:
    quiver: Quiver
    ideal_I: tuple[AlgebraElement, ...]
    ideal_Ibar: tuple[AlgebraElement, ...]
    gamma_bar: ArrowSubstitution
    base: str
    chain: TriangleChain
    presentation: NormalizedPresentation
    factors: list[ArrowSubstitution] = field(default_factory=list)
    # ("lasso", (i, j)) / ("cross", (i, j)) -> index into the ideals
    bookkeeping: dict = field(default_factory=dict)

    @property
    def bound_I(self) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.ideal_I, self.base)

    @property
    def bound_Ibar(self) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.ideal_Ibar, self.base)

    def inverse_gamma(self) -> ArrowSubstitution:
        return reverse_negated(self.factors)


def build_construction_pair(np: NormalizedPresentation, check_minimal: bool = True) -> ConstructionPair:
    tc = build_quiver_H(np)
    ideal = build_ideal_I(np, tc)
    gb = build_gamma_bar(np, tc)
    factors = gamma_bar_factors(np, tc)
    ibar = tuple(gb.apply(g) for g in ideal)
    book = {}
    for k, lasso in enumerate(np.lassos):
        book[("lasso", lasso)] = k
    for k, cross in enumerate(np.cross_lassos):
        book[("cross", cross)] = len(np.lassos) + k
    pair = ConstructionPair(tc.quiver, ideal, ibar, gb, tc.base, tc, np, factors, book)
    if not is_admissible(pair.bound_I) or not is_admissible(pair.bound_Ibar):
        raise AssertionError("constructed ideal is not admissible")
    if check_minimal:
        bq = pair.bound_I
        for k, g in enumerate(ideal):
            if not is_minimal_relation(g, bq):
                raise AssertionError(f"generator {g.format(tc.quiver)} is not minimal")
    return pair


def gamma_bar_composite(pair: ConstructionPair) -> ArrowSubstitution:
    return compose_all(pair.factors)


# -------------------------------------------------------- free block, gluing


def pentagon(suffix: str = "") -> tuple[Quiver, AlgebraElement, AlgebraElement]:
    """The quiver b: v->u, c: u->y, a: v->y, d: y->z with ad and ad + bcd."""
    v, u, y, z = (s + suffix for s in "vuyz")
    a, b, c, d = (s + suffix for s in "abcd")
    q = Quiver((v, u, y, z), (Arrow(a, v, y), Arrow(b, v, u), Arrow(c, u, y), Arrow(d, y, z)))
    ad = Path(v, z, (a, d))
    bcd = Path(v, z, (b, c, d))
    return q, AlgebraElement.of(ad), AlgebraElement.of(ad, bcd)


def rename_quiver(q: Quiver, vmap: dict, amap: dict) -> Quiver:
    return Quiver(tuple(vmap.get(v, v) for v in q.vertices),
                  tuple(Arrow(amap.get(a.name, a.name), vmap.get(a.source, a.source), vmap.get(a.target, a.target))
                        for a in q.arrows))


def rename_element(e: AlgebraElement, vmap: dict, amap: dict) -> AlgebraElement:
    return AlgebraElement((Path(vmap.get(p.source, p.source), vmap.get(p.target, p.target),
                                tuple(amap.get(a, a) for a in p.arrows)), c) for p, c in e.items())


def _glue(qa: Quiver, qb: Quiver, glue: tuple[str, str], prefixes=(None, None)):
    """Union of two quivers with glue[0] and glue[1] identified.

    Returns the glued quiver and the renaming maps for both sides. The
    merged vertex keeps the (possibly prefixed) name from the first side.
    """
    ga, gb = glue
    if ga not in qa.vertex_index:
        raise ValueError(f"glue vertex {ga!r} not in first quiver")
    if gb not in qb.vertex_index:
        raise ValueError(f"glue vertex {gb!r} not in second quiver")
    pa, pb = prefixes
    if pa is None and pb is None:
        clash = (set(qa.vertices) - {ga}) & (set(qb.vertices) - {gb}) or \
            {a.name for a in qa.arrows} & {a.name for a in qb.arrows} or \
            ({gb} & set(qa.vertices) - {ga}) or ({ga} & set(qb.vertices) - {gb})
        if clash:
            pa, pb = "L_", "R_"
    pa, pb = pa or "", pb or ""
    va = {v: pa + v for v in qa.vertices}
    aa = {a.name: pa + a.name for a in qa.arrows}
    vb = {v: pb + v for v in qb.vertices}
    vb[gb] = va[ga]
    ab = {a.name: pb + a.name for a in qb.arrows}
    ra, rb = rename_quiver(qa, va, aa), rename_quiver(qb, vb, ab)
    vertices = ra.vertices + tuple(v for v in rb.vertices if v != va[ga])
    q = Quiver(vertices, ra.arrows + rb.arrows)
    return q, (va, aa), (vb, ab)


def coproduct(a: BoundQuiver, b: BoundQuiver, glue: tuple[str, str], prefixes=(None, None)) -> BoundQuiver:
    """Glue two bound quivers at one vertex; the ideal is the sum."""
    q, (va, aa), (vb, ab) = _glue(a.quiver, b.quiver, glue, prefixes)
    ideal = tuple(rename_element(g, va, aa) for g in a.ideal) + tuple(rename_element(g, vb, ab) for g in b.ideal)
    return BoundQuiver(q, ideal, va[glue[0]])


@dataclass
class FreeBlock:
    quiver: Quiver
    L: tuple[AlgebraElement, ...]
    Lbar: tuple[AlgebraElement, ...]
    source: str
    sink: str

    @property
    def bound_L(self) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.L, self.source)

    @property
    def bound_Lbar(self) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.Lbar, self.source)


def build_free_block(m: int) -> FreeBlock:
    """m pentagons in a row, the sink z of each glued to the next source v.

    L = {a_j d_j} has fundamental group free of rank m; Lbar = {a_j d_j +
    b_j c_j d_j} has trivial fundamental group.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        q = Quiver(("o",), ())
        return FreeBlock(q, (), (), "o", "o")
    if m == 1:
        q, ad, adbcd = pentagon()
        return FreeBlock(q, (ad,), (adbcd,), "v", "z")
    vertices, arrows, L, Lbar = [], [], [], []
    sink = None
    for j in range(1, m + 1):
        q, ad, adbcd = pentagon(f"_{j}")
        vmap = {}
        if sink is not None:
            vmap[f"v_{j}"] = sink
        rq = rename_quiver(q, vmap, {})
        vertices += [v for v in rq.vertices if v not in vertices]
        arrows += list(rq.arrows)
        L.append(rename_element(ad, vmap, {}))
        Lbar.append(rename_element(adbcd, vmap, {}))
        sink = f"z_{j}"
    return FreeBlock(Quiver(tuple(vertices), tuple(arrows)), tuple(L), tuple(Lbar), "v_1", sink)


@dataclass
class GroupPair:
    """Q_G with the ideals J (group G) and Jbar (trivial group)."""

    quiver: Quiver
    J: tuple[AlgebraElement, ...]
    Jbar: tuple[AlgebraElement, ...]
    base: str
    source: str
    sink: str
    free_rank: int
    group: FPGroup
    normalized: NormalizedPresentation | None = None
    pair: ConstructionPair | None = None

    @property
    def bound_J(self) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.J, self.base)

    @property
    def bound_Jbar(self) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.Jbar, self.base)


def build_group_pair(g: FPGroup, check_minimal: bool = True) -> GroupPair:
    pos = to_positive(g)
    m, h = split_free_generators(pos)
    if not h.generators:
        if m == 0:
            # trivial group: the second pentagon presentation serves for both
            q, _, adbcd = pentagon()
            return GroupPair(q, (adbcd,), (adbcd,), "v", "v", "z", 0, g)
        fb = build_free_block(m)
        return GroupPair(fb.quiver, fb.L, fb.Lbar, fb.source, fb.source, fb.sink, m, g)
    np = normalize(h)
    pair = build_construction_pair(np, check_minimal=check_minimal)
    sink_h = f"x{np.n + 1}"
    if m == 0:
        return GroupPair(pair.quiver, pair.ideal_I, pair.ideal_Ibar, pair.base, pair.base, sink_h,
                         0, g, np, pair)
    fb = build_free_block(m)
    q, (va, aa), (vb, ab) = _glue(fb.quiver, pair.quiver, (fb.sink, pair.base))
    J = tuple(rename_element(e, va, aa) for e in fb.L) + tuple(rename_element(e, vb, ab) for e in pair.ideal_I)
    Jbar = tuple(rename_element(e, va, aa) for e in fb.Lbar) + tuple(rename_element(e, vb, ab) for e in pair.ideal_Ibar)
    merged = va[fb.sink]
    return GroupPair(q, J, Jbar, merged, va[fb.source], vb[sink_h], m, g, np, pair)


@dataclass
class TheoremFamily:
    quiver: Quiver
    ideals: list[tuple[AlgebraElement, ...]]
    base: str
    components: list[GroupPair]

    def bound(self, i: int) -> BoundQuiver:
        return BoundQuiver(self.quiver, self.ideals[i], self.base)


def build_theorem_family(gs: list[FPGroup], check_minimal: bool = True) -> TheoremFamily:
    """One quiver with ideals I_1..I_n, where pi_1(Q, I_i) is the i-th group.

    Components are prefixed G1_, G2_, ... and all glued at their source
    vertex, so no path leaves its component. I_i takes J from component i
    and Jbar from every other component.
    """
    if not gs:
        raise ValueError("need at least one group")
    comps = [build_group_pair(g, check_minimal=check_minimal) for g in gs]
    if len(comps) == 1:
        c = comps[0]
        return TheoremFamily(c.quiver, [c.J], c.base, comps)
    renames = []
    vertices: list[str] = []
    arrows: list[Arrow] = []
    hub = None
    for k, c in enumerate(comps, start=1):
        pre = f"G{k}_"
        vmap = {v: pre + v for v in c.quiver.vertices}
        amap = {a.name: pre + a.name for a in c.quiver.arrows}
        if hub is None:
            hub = vmap[c.source]
        else:
            vmap[c.source] = hub
        rq = rename_quiver(c.quiver, vmap, amap)
        vertices += [v for v in rq.vertices if v not in vertices]
        arrows += list(rq.arrows)
        renames.append((vmap, amap))
    q = Quiver(tuple(vertices), tuple(arrows))
    ideals = []
    for i in range(len(comps)):
        gens = []
        for k, (c, (vmap, amap)) in enumerate(zip(comps, renames)):
            src = c.J if k == i else c.Jbar
            gens += [rename_element(e, vmap, amap) for e in src]
        ideals.append(tuple(gens))
    return TheoremFamily(q, ideals, hub, comps)
