"""Exact sparse linear algebra over Q.

Vectors are dicts {index: Fraction} with zero entries absent; matrices
hold sparse rows.  Elimination prefers pivot rows with few nonzeros to
limit fill-in, and every computation is exact, so ranks and solvability
verdicts carry no numerical caveats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

SparseVec = dict[int, Fraction]


def vec_from_dense(xs: Sequence) -> SparseVec:
    return {i: Fraction(x) for i, x in enumerate(xs) if Fraction(x)}

def vec_add_scaled(target: SparseVec, src: SparseVec, c: Fraction) -> None:
    """target += c * src, in place, dropping zeros."""
    if not c:
        return
    for j, v in src.items():
        new = target.get(j, Fraction(0)) + c * v
        if new:
            target[j] = new
        else:
            target.pop(j, None)


def vec_dot(a: SparseVec, b: SparseVec) -> Fraction:
    if len(b) < len(a):
        a, b = b, a
    return sum((v * b[j] for j, v in a.items() if j in b), Fraction(0))


class RationalMatrix:
    """Sparse rows over Q with exact elimination."""

    def __init__(self, rows: Iterable[SparseVec], ncols: int):
        self.rows = [dict(r) for r in rows]
        self.ncols = ncols
        self._rref: tuple[list[SparseVec], list[int]] | None = None

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        ncols = max((len(r) for r in rows), default=0)
        return cls([vec_from_dense(r) for r in rows], ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[SparseVec], nrows: int) -> "RationalMatrix":
        rows: list[SparseVec] = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = Fraction(v)
        return cls(rows, len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "RationalMatrix":
        cols: list[SparseVec] = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return RationalMatrix(cols, self.nrows)

    # -- elimination -----------------------------------------------------

    def rref(self) -> tuple[list[SparseVec], list[int]]:
        """Reduced row echelon form: (rows, pivot column per row)."""
        if self._rref is None:
            self._rref = rref([dict(r) for r in self.rows])
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def solve(self, rhs: SparseVec | Sequence) -> list[Fraction] | None:
        """One solution y of (self) y = rhs, free variables 0; None if none."""
        if not isinstance(rhs, dict):
            rhs = vec_from_dense(rhs)
        aug = []
        for i, row in enumerate(self.rows):
            r = dict(row)
            if rhs.get(i):
                r[self.ncols] = rhs[i]
            aug.append(r)
        reduced, pivots = rref(aug, stop_col=self.ncols)
        y = [Fraction(0)] * self.ncols
        for row, p in zip(reduced, pivots):
            if p == self.ncols:
                return None  # a row 0 = nonzero
            y[p] = row.get(self.ncols, Fraction(0))
        return y

    def nullspace_basis(self) -> list[SparseVec]:
        """Basis of {v : (self) v = 0}, one vector per free column."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            v: SparseVec = {f: Fraction(1)}
            for row, p in zip(reduced, pivots):
                c = row.get(f)
                if c:
                    v[p] = -c
            basis.append(v)
        return basis

    def left_nullspace_basis(self) -> list[SparseVec]:
        return self.transpose().nullspace_basis()


def rref(rows: list[SparseVec], stop_col: int | None = None) -> tuple[list[SparseVec], list[int]]:
    """In-place reduced row echelon form of sparse rows.

    Pivots only in columns < stop_col when given (columns past it ride
    along, which is how augmented systems are handled).  Returns the
    nonzero rows and their pivot columns; a trailing row whose support
    lies entirely at or past stop_col keeps its leading index as pivot,
    letting callers spot inconsistency.
    """
    placed: list[SparseVec] = []
    pivots: list[int] = []
    pending = [r for r in rows if r]
    while pending:
        # among leftmost-leading rows, take the sparsest as pivot row
        lead = min(min(r) for r in pending)
        candidates = [r for r in pending if min(r) == lead]
        pivot_row = min(candidates, key=len)
        pending.remove(pivot_row)
        inv = Fraction(1) / pivot_row[lead]
        if inv != 1:
            for j in list(pivot_row):
                pivot_row[j] *= inv
        if stop_col is not None and lead >= stop_col:
            # cannot pivot here; keep for inconsistency reporting
            placed.append(pivot_row)
            pivots.append(lead)
            pending = [r for r in pending if r]
            continue
        for r in placed + pending:
            c = r.get(lead)
            if c:
                vec_add_scaled(r, pivot_row, -c)
        placed.append(pivot_row)
        pivots.append(lead)
        pending = [r for r in pending if r]
    order = sorted(range(len(placed)), key=lambda i: pivots[i])
    return [placed[i] for i in order], [pivots[i] for i in order]


def rank(rows: Iterable[SparseVec], ncols: int) -> int:
    return RationalMatrix(rows, ncols).rank()


def reduce_against(rref_rows: list[SparseVec], pivots: list[int], vec: SparseVec) -> SparseVec:
    """Residue of vec modulo the row space of an rref (pivots normalized)."""
    out = dict(vec)
    for row, p in zip(rref_rows, pivots):
        c = out.get(p)
        if c:
            vec_add_scaled(out, row, -c)
    return out
