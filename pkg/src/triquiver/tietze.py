"""Presentation cleanup by Tietze moves that keep the group fixed."""
from __future__ import annotations

from .presentations import FPGroup
from .words import cyclic_canonical, invert, length, letters, from_letters, substitute

DEFAULT_MAX_STEPS = 10_000


def _clean(relators) -> list:
    out = []
    seen = set()
    for r in relators:
        c = cyclic_canonical(r)
        if c and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _solve_for(r, g):
    """If g occurs exactly once in r (exponent +-1), return its value."""
    lets = letters(r)
    hits = [k for k, (x, _) in enumerate(lets) if x == g]
    if len(hits) != 1:
        return None
    k = hits[0]
    s = lets[k][1]
    # r = u g^s v = 1  =>  g^s = u^-1 v^-1  (rotate to v u g^s = 1)
    rest = from_letters(lets[k + 1:] + lets[:k])  # v u
    value = invert(rest)  # g^s = (v u)^-1
    return value if s > 0 else invert(value)


def tietze_simplify(g: FPGroup, max_steps: int = DEFAULT_MAX_STEPS) -> FPGroup:
    """Free and cyclic reduction, duplicate removal, generator elimination.

    A generator is eliminated when some relator contains it exactly once;
    the shortest such relator is used so words do not grow much.
    """
    gens = list(g.generators)
    rels = _clean(g.relators)
    steps = 0
    while steps < max_steps:
        steps += 1
        best = None
        for r in sorted(rels, key=length):
            for x in dict.fromkeys(x for x, _ in r):
                value = _solve_for(r, x)
                if value is not None:
                    best = (x, value, r)
                    break
            if best:
                break
        if best is None:
            break
        x, value, used = best
        gens.remove(x)
        rels = _clean(substitute(r, {x: value}) for r in rels if r is not used)
    return FPGroup(tuple(gens), tuple(rels))
