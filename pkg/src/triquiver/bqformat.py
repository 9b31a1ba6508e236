"""Text formats for bound quivers: .bq files and Graphviz DOT.

.bq layout::

    vertex v
    arrow a v y
    base v
    relations
    1*a.d + 1*b.c.d

Paths are arrow names joined by '.', a stationary path is '@VERTEX', and
coefficients are integers or p/q. '#' starts a comment.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .pathalgebra import AlgebraElement, Arrow, BoundQuiver, Path, Quiver

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"


def quiver_section(q: Quiver) -> str:
    lines = [f"vertex {v}" for v in q.vertices]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


def format_element(e: AlgebraElement, q: Quiver) -> str:
    return " + ".join(f"{c}*{p}" for p, c in e.sorted_terms(q))


def write_bq(bq: BoundQuiver) -> str:
    out = quiver_section(bq.quiver)
    out += f"base {bq.base}\nrelations\n"
    for g in bq.ideal:
        out += format_element(g, bq.quiver) + "\n"
    return out


def _parse_term(text: str, q: Quiver, lineno: int) -> tuple[Path, Fraction]:
    text = text.strip()
    coef = Fraction(1)
    if "*" in text:
        c, _, text = text.partition("*")
        c = c.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", c):
            raise ParseError(f"bad coefficient {c!r}", lineno)
        coef = Fraction(c)
        if coef == 0:
            raise ParseError("zero coefficient", lineno)
        text = text.strip()
    elif text.startswith("-"):
        coef, text = Fraction(-1), text[1:].strip()
    if text.startswith("@"):
        v = text[1:]
        if v not in q.vertex_index:
            raise ParseError(f"unknown vertex {v!r}", lineno)
        return Path.stationary(v), coef
    names = text.split(".")
    for n in names:
        if n not in q.arrow_index:
            raise ParseError(f"unknown arrow {n!r}", lineno)
    try:
        return q.path_from_arrows(names), coef
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_bq(text: str) -> BoundQuiver:
    vertices, arrows, rel_lines = [], [], []
    base = None
    in_relations = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_relations:
            rel_lines.append((lineno, line))
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex" and len(parts) == 2 and re.fullmatch(_NAME, parts[1]):
            vertices.append(parts[1])
        elif kind == "arrow" and len(parts) == 4 and re.fullmatch(_NAME, parts[1]):
            arrows.append((lineno, Arrow(*parts[1:])))
        elif kind == "base" and len(parts) == 2:
            base = parts[1]
        elif kind == "relations" and len(parts) == 1:
            in_relations = True
        else:
            raise ParseError(f"cannot read {line!r}", lineno, 1)
    for lineno, a in arrows:
        for v in (a.source, a.target):
            if v not in vertices:
                raise ParseError(f"arrow {a.name} uses unknown vertex {v}", lineno)
    try:
        q = Quiver(tuple(vertices), tuple(a for _, a in arrows))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if base is None:
        base = vertices[0] if vertices else None
    if base not in q.vertex_index:
        raise ParseError(f"base vertex {base!r} is not a vertex")
    ideal = []
    for lineno, line in rel_lines:
        terms = [_parse_term(t, q, lineno) for t in line.split("+")]
        e = AlgebraElement(terms)
        if not e:
            raise ParseError("relation is zero", lineno)
        if e.endpoints() is None:
            raise ParseError("relation terms are not parallel", lineno)
        ideal.append(e)
    return BoundQuiver(q, tuple(ideal), base)


def to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    lines += [f'  "{v}";' for v in q.vertices]
    lines += [f'  "{a.source}" -> "{a.target}" [label="{a.name}"];' for a in q.arrows]
    lines.append("}")
    return "\n".join(lines) + "\n"
