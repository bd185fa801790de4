"""Exact Gaussian elimination over any field whose elements expose ``is_zero``.

Rows are sparse dicts ``column -> value``; columns are non-negative ints and
the right-hand side lives in column ``RHS``.  The reducer keeps its pivot
rows in reduced row-echelon form, so reducing a new row needs one pass.
"""
from __future__ import annotations

from ..errors import Inconsistent, Underdetermined

RHS = -1


def _is_zero(v):
    z = getattr(v, "is_zero", None)
    return z() if z is not None else v == 0


class SparseReducer:
    """Incremental row reduction of a sparse linear system."""

    def __init__(self):
        self.pivots = {}
        self.inconsistent = False

    def reduce(self, row):
        """Reduce ``row`` against the current pivots; returns the remainder."""
        row = {k: v for k, v in row.items() if not _is_zero(v)}
        for col in [c for c in row if c in self.pivots]:
            f = row.get(col)
            if f is None:
                continue
            for k, pv in self.pivots[col].items():
                cur = row.get(k)
                nv = -(f * pv) if cur is None else cur - f * pv
                if _is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
        return row

    def add(self, row):
        """Add an equation; returns True if it raised the rank."""
        row = self.reduce(row)
        cols = [c for c in row if c != RHS]
        if not cols:
            if RHS in row:
                self.inconsistent = True
            return False
        col = min(cols)
        inv = 1 / row[col] if not hasattr(row[col], "inverse") else row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        row[col] = _one_like(row[col])
        for prow in self.pivots.values():
            f = prow.get(col)
            if f is None:
                continue
            for k, v in row.items():
                cur = prow.get(k)
                nv = -(f * v) if cur is None else cur - f * v
                if _is_zero(nv):
                    prow.pop(k, None)
                else:
                    prow[k] = nv
        self.pivots[col] = row
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def solution(self, columns, zero, free_ok=False):
        """Solution vector for ``columns``.

        Raises Inconsistent when the system has no solution and Underdetermined
        when a requested column is free (unless ``free_ok``, which sets free
        columns to ``zero``).
        """
        if self.inconsistent:
            raise Inconsistent("linear system has no solution")
        out = {}
        for c in columns:
            prow = self.pivots.get(c)
            if prow is None:
                if not free_ok:
                    raise Underdetermined(f"unknown {c} is not determined")
                out[c] = zero
                continue
            others = [k for k in prow if k not in (c, RHS)]
            if others and not free_ok:
                raise Underdetermined(f"unknown {c} depends on free unknowns {others}")
            out[c] = prow.get(RHS, zero)
        return out

    def free_columns(self, columns):
        return [c for c in columns if c not in self.pivots]


def _one_like(v):
    return v * (1 / v if not hasattr(v, "inverse") else v.inverse())


def rank(matrix):
    """Exact rank of a dense matrix (list of rows)."""
    red = SparseReducer()
    for row in matrix:
        red.add({j: v for j, v in enumerate(row)})
    return red.rank


def solve(matrix, rhs, zero):
    """Unique solution of ``matrix @ x == rhs``."""
    red = SparseReducer()
    for row, b in zip(matrix, rhs):
        d = {j: v for j, v in enumerate(row)}
        d[RHS] = b
        red.add(d)
    ncols = len(matrix[0]) if matrix else 0
    sol = red.solution(range(ncols), zero)
    return [sol[j] for j in range(ncols)]


def nullspace(matrix, ncols, zero, one):
    """Basis of the right kernel of a dense matrix."""
    red = SparseReducer()
    for row in matrix:
        red.add({j: v for j, v in enumerate(row)})
    basis = []
    for f in red.free_columns(range(ncols)):
        vec = [zero] * ncols
        vec[f] = one
        for c, prow in red.pivots.items():
            coef = prow.get(f)
            if coef is not None:
                vec[c] = -coef
        basis.append(vec)
    return basis
