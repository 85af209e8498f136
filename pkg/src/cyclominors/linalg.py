"""Exact determinant, rank and right kernel over Q(w_n).

Elimination is plain field Gaussian elimination: the pivot is the first
nonzero entry of the current column, so every run is reproducible bit for
bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from cyclominors.cyclotomic import CycElem
from cyclominors.errors import UsageError


@dataclass(frozen=True)
class CycVector:
    conductor: int
    entries: tuple[CycElem, ...]

    def __post_init__(self):
        for x in self.entries:
            if x.n != self.conductor:
                raise UsageError(f"vector entry over n={x.n} in a vector over n={self.conductor}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.entries) if x)


@dataclass(frozen=True)
class CycMatrix:
    conductor: int
    rows: int
    cols: int
    entries: tuple[CycElem, ...]  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise UsageError(
                f"matrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")
        for x in self.entries:
            if x.n != self.conductor:
                raise UsageError(f"matrix entry over n={x.n} in a matrix over n={self.conductor}")

    @classmethod
    def from_rows(cls, conductor: int, rows: Sequence[Sequence], cols: int | None = None) -> CycMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = []
        for r in rows:
            if len(r) != cols:
                raise UsageError("ragged matrix rows")
            for x in r:
                entries.append(x if isinstance(x, CycElem) else CycElem.rational(conductor, x))
        return cls(conductor, len(rows), cols, tuple(entries))

    @classmethod
    def identity(cls, conductor: int, size: int) -> CycMatrix:
        one, zero = CycElem.one(conductor), CycElem.zero(conductor)
        return cls(conductor, size, size,
                   tuple(one if i == j else zero for i in range(size) for j in range(size)))

    def __getitem__(self, ij: tuple[int, int]) -> CycElem:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[CycElem, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self) -> list[list[CycElem]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> CycMatrix:
        return CycMatrix(self.conductor, self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> CycMatrix:
        return CycMatrix(self.conductor, len(rows), len(cols),
                         tuple(self[i, j] for i in rows for j in cols))

    def matvec(self, v: Sequence[CycElem]) -> CycVector:
        if len(v) != self.cols:
            raise UsageError(f"matvec: vector length {len(v)} != {self.cols} columns")
        out = []
        for i in range(self.rows):
            acc = CycElem.zero(self.conductor)
            for a, x in zip(self.row(i), v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return CycVector(self.conductor, tuple(out))


def _echelon(rows: list[list[CycElem]], ncols: int, reduced: bool):
    """In-place row echelon form.  Returns (pivot columns, number of row swaps)."""
    pivots = []
    swaps = 0
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            swaps += 1
        prow = rows[r]
        if reduced:
            inv = prow[c].inverse()
            prow[c:] = [x * inv if x else x for x in prow[c:]]
            targets = [i for i in range(nrows) if i != r]
        else:
            inv = prow[c].inverse()
            targets = range(r + 1, nrows)
        for i in targets:
            row = rows[i]
            if not row[c]:
                continue
            factor = row[c] if reduced else row[c] * inv
            for j in range(c, ncols):
                if prow[j]:
                    row[j] = row[j] - factor * prow[j]
        pivots.append(c)
        r += 1
    return pivots, swaps


def determinant(m: CycMatrix) -> CycElem:
    if m.rows != m.cols:
        raise UsageError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    rows = m.row_list()
    pivots, swaps = _echelon(rows, m.cols, reduced=False)
    if len(pivots) < m.rows:
        return CycElem.zero(m.conductor)
    det = CycElem.one(m.conductor)
    for i in range(m.rows):
        det = det * rows[i][i]
    return -det if swaps % 2 else det


def rank(m: CycMatrix) -> int:
    rows = m.row_list()
    pivots, _ = _echelon(rows, m.cols, reduced=False)
    return len(pivots)


def kernel_basis(m: CycMatrix) -> list[CycVector]:
    """Basis of {v : m v = 0}, one vector per free column.

    Each vector has its free coordinate set to 1, the other free
    coordinates 0, and pivot coordinates read off the reduced echelon form.
    """
    n = m.conductor
    rows = m.row_list()
    pivots, _ = _echelon(rows, m.cols, reduced=True)
    pivot_set = set(pivots)
    zero, one = CycElem.zero(n), CycElem.one(n)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [zero] * m.cols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(CycVector(n, tuple(v)))
    return basis
