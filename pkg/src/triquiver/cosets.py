"""Todd-Coxeter enumeration of the cosets of the trivial subgroup.

HLT strategy: at every live coset, trace each relator with scan-and-fill,
then fill the rest of the row. Coincidences are processed with the usual
union-find queue.
"""
from __future__ import annotations

from dataclasses import dataclass

from .presentations import FPGroup
from .words import letters

DEFAULT_MAX_COSETS = 100_000


@dataclass(frozen=True)
class EnumerationResult:
    finite: bool
    order: int | None
    cosets_used: int
    max_cosets: int

    @property
    def verdict(self) -> str:
        return f"Finite({self.order})" if self.finite else f"Inconclusive({self.cosets_used})"

    def __str__(self):
        return self.verdict


class _BoundHit(Exception):
    pass


class _CosetTable:
    def __init__(self, ngens: int, max_cosets: int):
        self.width = 2 * ngens
        self.max = max_cosets
        self.table = [[None] * self.width]
        self.parent = [0]

    @staticmethod
    def inv(col: int) -> int:
        return col ^ 1

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> int:
        if len(self.table) >= self.max:
            raise _BoundHit
        d = len(self.table)
        self.table.append([None] * self.width)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][self.inv(x)] = c
        return d

    def _merge(self, k: int, l: int, queue: list):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        k, l = min(k, l), max(k, l)
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = self.table[g]
            for x in range(self.width):
                d = row[x]
                if d is None:
                    continue
                xi = self.inv(x)
                self.table[d][xi] = None
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][xi] is not None:
                    self._merge(mu, self.table[nu][xi], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][xi] = mu

    def scan_and_fill(self, c: int, word: list[int]):
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][self.inv(word[j])] is not None:
                b = t[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])


def todd_coxeter(g: FPGroup, max_cosets: int = DEFAULT_MAX_COSETS) -> EnumerationResult:
    """Order of ``g`` if enumeration closes within ``max_cosets`` cosets."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    col = {x: 2 * i for i, x in enumerate(g.generators)}
    words = []
    for r in g.relators:
        w = [col[x] if s > 0 else col[x] ^ 1 for x, s in letters(r)]
        if w:
            words.append(w)
    ct = _CosetTable(len(g.generators), max_cosets)
    c = 0
    try:
        while c < len(ct.table):
            if ct.alive(c):
                for w in words:
                    ct.scan_and_fill(c, w)
                    if not ct.alive(c):
                        break
                if ct.alive(c):
                    for x in range(ct.width):
                        if ct.table[c][x] is None:
                            ct.define(c, x)
            c += 1
    except _BoundHit:
        return EnumerationResult(False, None, max_cosets, max_cosets)
    order = sum(1 for k in range(len(ct.table)) if ct.alive(k))
    return EnumerationResult(True, order, len(ct.table), max_cosets)
