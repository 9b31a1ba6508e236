"""Exact sparse row reduction over the rationals.

Vectors are plain dicts ``{column: coefficient}`` with no zero entries.
Columns are integers; the pivot of a row is its smallest column.
Arithmetic runs on gmpy2 rationals; ``to_fraction`` converts back.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from gmpy2 import mpq


def _q(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class RowSpace:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Rows are kept fully reduced: a pivot column is zero in every other row.
    That makes membership a single pass over the vector's pivot entries.
    """

    def __init__(self, vectors=()):
        self.rows: dict[int, dict[int, mpq]] = {}
        # non-pivot column -> pivots of the rows holding it
        self._holders: dict[int, set[int]] = defaultdict(set)
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> dict[int, mpq]:
        v = {c: _q(x) for c, x in vec.items() if x}
        for p in [c for c in v if c in self.rows]:
            coef = v.get(p)
            if not coef:
                continue
            for c, x in self.rows[p].items():
                nv = v.get(c, 0) - coef * x
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
        return v

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec) -> bool:
        """Insert ``vec``; return True when the rank grew."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        if lead != 1:
            r = {c: x / lead for c, x in r.items()}
        # clear the new pivot column from the existing rows
        for q in self._holders.pop(p, ()):
            row = self.rows[q]
            coef = row.pop(p)
            for c, x in r.items():
                if c == p:
                    continue
                nv = row.get(c, 0) - coef * x
                if nv:
                    if c not in row:
                        self._holders[c].add(q)
                    row[c] = nv
                else:
                    row.pop(c, None)
                    self._holders[c].discard(q)
        self.rows[p] = r
        for c in r:
            if c != p:
                self._holders[c].add(p)
        return True

    def components(self, ncols: int) -> list[list[int]]:
        """Connected components of the columns under shared rows.

        The rows form the fundamental circuits of the support matroid of the
        space, so these are its connected components. Columns in no row, or
        alone in a row, come back as singletons.
        """
        parent = list(range(ncols))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p, row in self.rows.items():
            rp = find(p)
            for c in row:
                rc = find(c)
                if rc != rp:
                    parent[rc] = rp
        groups: dict[int, list[int]] = defaultdict(list)
        for c in range(ncols):
            groups[find(c)].append(c)
        return sorted(groups.values())


def rank(vectors) -> int:
    return RowSpace(vectors).rank
