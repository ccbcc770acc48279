"""Exact sparse Gaussian elimination over Q.

Rows are dicts ``{column: mpq}``.  Pivots are chosen as the leftmost
(smallest) column of each new row, and rows are processed in the order
given, so every result here is deterministic.
"""
from __future__ import annotations

from .core import mpq


class Echelon:
    """Incremental row echelon form that remembers how rows were combined."""

    def __init__(self, track: bool = False):
        self.rows: dict = {}       # pivot column -> normalized row
        self.order: list = []      # pivot columns in insertion order
        self.track = track
        self.combos: dict = {}     # pivot column -> {input index: coeff}
        self.count = 0

    def reduce(self, row: dict, combo: dict | None = None):
        """Reduce ``row`` against the stored pivots; returns (remainder, combo)."""
        row = dict(row)
        combo = dict(combo) if combo is not None else ({} if self.track else None)
        changed = True
        while changed and row:
            changed = False
            for col in sorted(c for c in row if c in self.rows):
                f = row.get(col)
                if not f:
                    continue
                prow = self.rows[col]
                for k, x in prow.items():
                    s = row.get(k, 0) - f * x
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
                if combo is not None:
                    for k, x in self.combos[col].items():
                        s = combo.get(k, 0) - f * x
                        if s:
                            combo[k] = s
                        else:
                            combo.pop(k, None)
                changed = True
        return row, combo

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it was independent."""
        idx = self.count
        self.count += 1
        combo = {idx: mpq(1)} if self.track else None
        rem, combo = self.reduce(row, combo)
        if not rem:
            return False
        col = min(rem)
        inv = 1 / mpq(rem[col])
        rem = {k: x * inv for k, x in rem.items()}
        self.rows[col] = rem
        self.order.append(col)
        if self.track:
            self.combos[col] = {k: x * inv for k, x in combo.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def rref(self) -> dict:
        """Fully reduced rows keyed by pivot column."""
        cols = sorted(self.rows, reverse=True)
        rows = {c: dict(self.rows[c]) for c in cols}
        for i, c in enumerate(cols):
            r = rows[c]
            for c2 in cols[:i]:
                f = r.get(c2)
                if f:
                    for k, x in rows[c2].items():
                        s = r.get(k, 0) - f * x
                        if s:
                            r[k] = s
                        else:
                            r.pop(k, None)
        return rows


def rank(rows) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def independent_rows(rows) -> list:
    """Indices of the rows independent of all earlier rows."""
    e = Echelon()
    return [i for i, r in enumerate(rows) if e.add(r)]


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x : row . x = 0 for all rows}`` as dicts over ``range(ncols)``."""
    e = Echelon()
    for r in rows:
        e.add(r)
    red = e.rref()
    free = [c for c in range(ncols) if c not in red]
    basis = []
    for f in free:
        vec = {f: mpq(1)}
        for pc, r in red.items():
            x = r.get(f)
            if x:
                vec[pc] = -x
        basis.append(vec)
    return basis


def column_space_basis(vectors) -> list:
    """Echelon basis (as dict rows) of the span of ``vectors``."""
    e = Echelon()
    for v in vectors:
        e.add(v)
    return [e.rows[c] for c in e.order]


def matrix_rows(mat) -> list:
    """Dense list-of-lists to sparse rows."""
    return [{j: mpq(x) for j, x in enumerate(row) if x} for row in mat]


def dense(rows, ncols: int) -> list:
    return [[mpq(r.get(j, 0)) for j in range(ncols)] for r in rows]


def matmul(a, b) -> list:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), mpq(0)) for j in range(m)] for i in range(n)]


def transpose(a) -> list:
    return [list(col) for col in zip(*a)] if a else []


def identity(d: int) -> list:
    return [[mpq(1 if i == j else 0) for j in range(d)] for i in range(d)]


def inverse(a) -> list:
    """Inverse of a square invertible matrix by Gauss-Jordan."""
    n = len(a)
    m = [[mpq(x) for x in row] + [mpq(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]
