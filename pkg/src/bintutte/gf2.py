"""Bit-packed dense linear algebra over GF(2).

Rows are stored as Python integers used as bitsets: bit ``e`` of ``data[i]``
is the entry in row ``i``, column ``e``.  Elimination is word-parallel XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError


@dataclass(frozen=True)
class Gf2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("negative matrix dimension")
        if len(self.data) != self.rows:
            raise InputError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for r in self.data:
            if r < 0 or r >= limit:
                raise InputError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Gf2Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise InputError(f"ragged row: expected {cols} entries, got {len(r)}")
            word = 0
            for e, bit in enumerate(r):
                if bit not in (0, 1):
                    raise InputError(f"entry {bit!r} is not 0/1")
                if bit:
                    word |= 1 << e
            data.append(word)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[int]) -> "Gf2Matrix":
        """Build from column bitmasks (bit ``i`` = row ``i``)."""
        data = [0] * rows
        for e, col in enumerate(columns):
            if col >> rows:
                raise InputError("column has bits outside the row range")
            i = 0
            while col:
                if col & 1:
                    data[i] |= 1 << e
                col >>= 1
                i += 1
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, e: int) -> int:
        if not (0 <= i < self.rows and 0 <= e < self.cols):
            raise InputError(f"entry ({i}, {e}) out of range")
        return (self.data[i] >> e) & 1

    def column(self, e: int) -> int:
        """Column ``e`` as a bitmask over rows."""
        if not 0 <= e < self.cols:
            raise InputError(f"column {e} out of range")
        col = 0
        for i, r in enumerate(self.data):
            col |= ((r >> e) & 1) << i
        return col

    def columns(self) -> list[int]:
        return [self.column(e) for e in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> e) & 1 for e in range(self.cols)] for r in self.data]

    def select_columns(self, idx: Sequence[int]) -> "Gf2Matrix":
        return Gf2Matrix.from_columns(self.rows, [self.column(e) for e in idx])

    def __str__(self) -> str:
        return format_matrix(self)


def _check_subset(m: Gf2Matrix, subset: Iterable[int]) -> list[int]:
    out = []
    for e in subset:
        if not 0 <= e < m.cols:
            raise InputError(f"column {e} out of range for {m.cols} columns")
        out.append(e)
    return out


def vector_rank(vectors: Iterable[int]) -> int:
    """Rank of a family of bitmask vectors.

    Keeps a basis with distinct leading bits; ``min(v, v ^ b)`` clears the
    leading bit of ``b`` from ``v`` whenever it is set.
    """
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def rank(m: Gf2Matrix, subset: Iterable[int] | None = None) -> int:
    """GF(2) rank of the columns in ``subset`` (all columns if omitted)."""
    if subset is None:
        return vector_rank(m.data)
    idx = _check_subset(m, subset)
    return vector_rank(m.column(e) for e in idx)


def row_reduce(m: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Reduced row-echelon form and its (increasing) pivot columns.

    Zero rows are kept at the bottom so the shape is unchanged.
    """
    rows = list(m.data)
    pivots: list[int] = []
    r = 0
    for e in range(m.cols):
        bit = 1 << e
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(e)
        r += 1
        if r == len(rows):
            break
    return Gf2Matrix(m.rows, m.cols, tuple(rows)), pivots


def dual_representation(m: Gf2Matrix) -> Gf2Matrix:
    """A matrix whose row space is the orthogonal complement of ``m``'s.

    With ``m`` in reduced form ``[I | A]`` up to a column permutation, the dual
    is ``[A^T | I]`` under the same permutation.  Here the permutation is kept
    implicit in the pivot/free column index lists, so column ``e`` of the
    result is always ground element ``e``.
    """
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free = [e for e in range(m.cols) if e not in pivot_set]
    out = []
    for f in free:
        word = 1 << f
        for i, p in enumerate(pivots):
            if (reduced.data[i] >> f) & 1:
                word |= 1 << p
        out.append(word)
    return Gf2Matrix(len(out), m.cols, tuple(out))


def parse_matrix(text: str) -> Gf2Matrix:
    """Parse the ``R C`` header + R rows of 0/1 tokens format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise InputError("matrix header must be 'R C'")
    try:
        r, c = int(header[0]), int(header[1])
    except ValueError:
        raise InputError("matrix header must be integers") from None
    body = lines[1:]
    if c == 0 and not body:
        # zero-width rows are blank lines, which are skipped above
        body = [""] * r
    if len(body) != r:
        raise InputError(f"expected {r} matrix rows, found {len(body)}")
    rows = []
    for ln in body:
        toks = ln.split()
        if any(t not in ("0", "1") for t in toks):
            raise InputError(f"matrix entries must be 0 or 1: {ln!r}")
        rows.append([int(t) for t in toks])
    return Gf2Matrix.from_rows(rows, cols=c)


def format_matrix(m: Gf2Matrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += [" ".join(str(b) for b in row) for row in m.to_lists()]
    return "\n".join(lines) + "\n"
