"""Abelian invariants via the Smith normal form of the relation matrix."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .presentations import FPGroup
from .words import exponent_sums


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion_factors: tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z{d}" for d in self.torsion_factors]
        return " + ".join(parts) if parts else "0"


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(row) for row in matrix if any(row)]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/column t to the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, i, j = min(cands)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility: fold an offending entry of the block into row t
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    # already a divisibility chain by construction; normalize defensively
    out = []
    for d in diag:
        out.append(d)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            g = gcd(out[i], out[j])
            out[i], out[j] = g, out[i] * out[j] // g
    return out


def relation_matrix(g: FPGroup) -> list[list[int]]:
    idx = {x: i for i, x in enumerate(g.generators)}
    out = []
    for r in g.relators:
        row = [0] * len(g.generators)
        for x, e in exponent_sums(r).items():
            row[idx[x]] += e
        out.append(row)
    return out


def abelianization(g: FPGroup) -> AbelianInvariants:
    diag = smith_diagonal(relation_matrix(g)) if g.generators else []
    return AbelianInvariants(len(g.generators) - len(diag), tuple(d for d in diag if d > 1))
