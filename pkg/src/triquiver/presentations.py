"""Finitely presented groups: the .grp format and the lasso normal form.

The pipeline is ``parse_presentation -> to_positive -> split_free_generators
-> normalize``. The normal form has generators w_1..w_n and two kinds of
relations: lassos ``w_i w_{i+1} ... w_j = 1`` over consecutive indices, and
cross-lassos ``w_i = w_j``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .words import Word, format_word, from_letters, letters, reduce_word

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class FPGroup:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple((g, int(e)) for g, e in r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator name")
        known = set(self.generators)
        for r in self.relators:
            for g, e in r:
                if g not in known:
                    raise ValueError(f"relator uses unknown generator {g}")
                if e == 0:
                    raise ValueError("zero exponent in relator")

    def to_text(self) -> str:
        rels = " ; ".join(format_word(r) for r in self.relators if r)
        return f"generators: {' '.join(self.generators)}\nrelators: {rels}\n"

    def rename(self, mapping: dict[str, str]) -> "FPGroup":
        return FPGroup(tuple(mapping.get(g, g) for g in self.generators),
                       tuple(tuple((mapping.get(g, g), e) for g, e in r) for r in self.relators))

    def __str__(self):
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"


# the input presentations and the pi_1 outputs share one shape
GroupPresentation = FPGroup


# ------------------------------------------------------------------ parsing


def _parse_word(text: str, line: int, col0: int, known: set[str]) -> Word:
    out = []
    pos = 0
    expect_term = True
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            if expect_term:
                raise ParseError("expected a generator", line, col0 + pos)
            break
        if not expect_term:
            if text[pos] != "*":
                raise ParseError(f"expected '*', got {text[pos]!r}", line, col0 + pos)
            pos += 1
            expect_term = True
            continue
        m = NAME_RE.match(text, pos)
        if not m:
            raise ParseError(f"expected a generator name, got {text[pos]!r}", line, col0 + pos)
        name = m.group()
        if name not in known:
            raise ParseError(f"unknown generator {name}", line, col0 + pos)
        pos = m.end()
        exp = 1
        rest = text[pos:]
        em = re.match(r"\s*\^\s*([+-]?\d+)", rest)
        if em:
            exp = int(em.group(1))
            if exp == 0:
                raise ParseError("zero exponent", line, col0 + pos)
            pos += em.end()
        elif rest.lstrip().startswith("^"):
            raise ParseError("malformed exponent", line, col0 + pos)
        out.append((name, exp))
        expect_term = False
    return tuple(out)


def parse_presentation(text: str) -> FPGroup:
    """Parse the .grp format.

    ::

        generators: a b
        relators: a*b*a^-1*b^-1 ; a^2
    """
    gens = None
    rel_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, body = line.partition(":")
        key = key.strip()
        offset = len(key) + 2 + (len(line) - len(line.lstrip()))
        if not sep or key not in ("generators", "relators"):
            raise ParseError("expected 'generators:' or 'relators:'", lineno, 1)
        if key == "generators":
            if gens is not None:
                raise ParseError("generators given twice", lineno, 1)
            gens = []
            for m in re.finditer(r"\S+", body):
                name = m.group()
                col = len(raw) - len(raw.lstrip()) + len(key) + 2 + m.start()
                if not NAME_RE.fullmatch(name):
                    raise ParseError(f"bad generator name {name!r}", lineno, col)
                if name in gens:
                    raise ParseError(f"duplicate generator {name}", lineno, col)
                gens.append(name)
        else:
            rel_lines.append((lineno, offset, body))
    if gens is None:
        raise ParseError("missing 'generators:' line")
    known = set(gens)
    relators = []
    for lineno, offset, body in rel_lines:
        start = 0
        for chunk in body.split(";"):
            if chunk.strip():
                relators.append(_parse_word(chunk, lineno, offset + start, known))
            start += len(chunk) + 1
    return FPGroup(tuple(gens), tuple(relators))


# --------------------------------------------------------- positive relators


@dataclass(frozen=True)
class PositivePresentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[str, ...], ...]
    inverse_pairs: dict = field(default_factory=dict, compare=False)

    def to_fpgroup(self) -> FPGroup:
        return FPGroup(self.generators, tuple(from_letters((g, 1) for g in r) for r in self.relators))


def _fresh(name: str, taken: set[str]) -> str:
    cand = name + "_inv"
    while cand in taken:
        cand += "_"
    return cand


def to_positive(p: FPGroup) -> PositivePresentation:
    """Rewrite relators as positive words of length >= 2.

    Powers are expanded, each inverse x^-1 becomes a formal generator x_inv
    with the extra relator ``x x_inv``, and length-one relators x = 1 are
    removed by deleting x everywhere.
    """
    taken = set(p.generators)
    inv_name: dict[str, str] = {}
    relators = []
    for r in p.relators:
        word = []
        for g, s in letters(reduce_word(r)):
            if s > 0:
                word.append(g)
            else:
                if g not in inv_name:
                    inv_name[g] = _fresh(g, taken)
                    taken.add(inv_name[g])
                word.append(inv_name[g])
        if word:
            relators.append(word)
    gens = list(p.generators)
    for g in p.generators:
        if g in inv_name:
            gens.append(inv_name[g])
            relators.append([g, inv_name[g]])

    # Tietze deletion of generators killed by a one-letter relator
    while True:
        dead = {r[0] for r in relators if len(r) == 1}
        if not dead:
            break
        gens = [g for g in gens if g not in dead]
        relators = [[x for x in r if x not in dead] for r in relators]
        relators = [r for r in relators if r]
    alive = set(gens)
    pairs = {bar: g for g, bar in inv_name.items() if bar in alive}
    return PositivePresentation(tuple(gens), tuple(tuple(r) for r in relators), pairs)


def split_free_generators(p: PositivePresentation) -> tuple[int, PositivePresentation]:
    used = {g for r in p.relators for g in r}
    m = sum(1 for g in p.generators if g not in used)
    h_gens = tuple(g for g in p.generators if g in used)
    pairs = {k: v for k, v in p.inverse_pairs.items() if k in used}
    return m, PositivePresentation(h_gens, p.relators, pairs)


# ------------------------------------------------------------ normalization


@dataclass(frozen=True)
class NormalizedPresentation:
    n: int
    lassos: tuple[tuple[int, int], ...]
    cross_lassos: tuple[tuple[int, int], ...]
    origin: tuple[str, ...]  # origin[i - 1] is the generator behind w_i

    def origin_of(self, i: int) -> str:
        return self.origin[i - 1]

    def lasso_of(self, i: int) -> int:
        for k, (a, b) in enumerate(self.lassos):
            if a <= i <= b:
                return k
        raise KeyError(i)

    def generator_names(self) -> tuple[str, ...]:
        return tuple(f"w{i}" for i in range(1, self.n + 1))

    def to_fpgroup(self) -> FPGroup:
        """The group < w_1..w_n | lassos, cross-lassos >."""
        w = self.generator_names()
        rels = [tuple((w[k - 1], 1) for k in range(i, j + 1)) for i, j in self.lassos]
        rels += [((w[i - 1], 1), (w[j - 1], -1)) for i, j in self.cross_lassos]
        return FPGroup(w, tuple(rels))

    def check_properties(self) -> list[str]:
        """Violations of the structural properties; empty list when fine."""
        problems = []
        covered = []
        for i, j in self.lassos:
            if j < i + 1:
                problems.append(f"lasso [{i},{j}] is shorter than 2")
            covered.extend(range(i, j + 1))
        if sorted(covered) != list(range(1, self.n + 1)):
            problems.append("lassos do not partition 1..n")
        for i, j in self.cross_lassos:
            if not 1 <= i < j <= self.n:
                problems.append(f"cross-lasso ({i},{j}) is not an increasing pair in range")
        if len(self.origin) != self.n:
            problems.append("origin map has the wrong size")
        if sum(j - i + 1 for i, j in self.lassos) != self.n:
            problems.append("lasso lengths do not add up to n")
        return problems

    def describe(self) -> str:
        lines = [f"n = {self.n}"]
        lines.append("lassos: " + " ".join(f"[{i}..{j}]" for i, j in self.lassos))
        lines.append("cross-lassos: " + " ".join(f"({i},{j})" for i, j in self.cross_lassos))
        lines.append("origin: " + " ".join(f"w{i}={g}" for i, g in enumerate(self.origin, 1)))
        return "\n".join(lines)


def normalize(h: PositivePresentation) -> NormalizedPresentation:
    """Give every letter of every relator its own index.

    Relator t becomes a lasso over fresh consecutive indices; the
    occurrences of each original generator are chained by cross-lassos
    first-second, second-third, and so on. A chain is a spanning tree of the
    occurrences, so no cross-lasso is redundant.
    """
    lassos = []
    origin = []
    occurrences: dict[str, list[int]] = {g: [] for g in h.generators}
    idx = 0
    for r in h.relators:
        if len(r) < 2:
            raise ValueError(f"relator {' '.join(r)} has fewer than two letters")
        start = idx + 1
        for g in r:
            idx += 1
            origin.append(g)
            occurrences.setdefault(g, []).append(idx)
        lassos.append((start, idx))
    crosses = []
    for g in occurrences:
        occ = occurrences[g]
        crosses.extend(zip(occ, occ[1:]))
    return NormalizedPresentation(idx, tuple(lassos), tuple(crosses), tuple(origin))


def free_product(a: FPGroup, b: FPGroup) -> FPGroup:
    """Concatenate presentations, renaming b's generators on collision."""
    taken = set(a.generators)
    mapping = {}
    for g in b.generators:
        new = g
        k = 2
        while new in taken:
            new = f"{g}_{k}"
            k += 1
        taken.add(new)
        mapping[g] = new
    bb = b.rename(mapping)
    return FPGroup(a.generators + bb.generators, a.relators + bb.relators)
