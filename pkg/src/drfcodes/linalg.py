"""Exact dense linear algebra over a :class:`~drfcodes.gf.Field`.

Matrices here are tiny (2x2 blocks, 2x4 repair matrices, 4x4 decode
systems), so everything is plain Python over tuples of ints.  A single
Gaussian elimination routine backs rank, solve and reduced row-echelon form;
it pivots on the first nonzero entry found scanning down the column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix
from .gf import Field


@dataclass(frozen=True)
class Mat:
    field: Field
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        q = self.field.order
        for r in rows:
            for v in r:
                if not 0 <= v < q:
                    raise ValueError(f"entry {v} is not an element of {self.field.ident}")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat view."""
        return tuple(v for r in self.rows for v in r)

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(r[c] for r in self.rows)

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        return mat_add(self, other)

    def __sub__(self, other: "Mat") -> "Mat":
        return mat_sub(self, other)

    def scale(self, c: int) -> "Mat":
        f = self.field
        return Mat(f, tuple(tuple(f.mul(c, v) for v in r) for r in self.rows))

    def is_zero(self) -> bool:
        return not any(v for r in self.rows for v in r)

    def __repr__(self):
        return f"Mat({self.field.ident}, {[list(r) for r in self.rows]})"


def mat(field: Field, rows: Iterable[Sequence[int]]) -> Mat:
    return Mat(field, tuple(tuple(r) for r in rows))


def identity(field: Field, n: int) -> Mat:
    return Mat(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def zeros(field: Field, rows: int, cols: int) -> Mat:
    return Mat(field, tuple((0,) * cols for _ in range(rows)))


def vstack(*ms: Mat) -> Mat:
    _same_field(*ms)
    if len({m.ncols for m in ms}) != 1:
        raise DimensionMismatch("vstack needs equal column counts")
    return Mat(ms[0].field, tuple(r for m in ms for r in m.rows))


def hstack(*ms: Mat) -> Mat:
    _same_field(*ms)
    if len({m.nrows for m in ms}) != 1:
        raise DimensionMismatch("hstack needs equal row counts")
    rows = tuple(tuple(v for m in ms for v in m.rows[i]) for i in range(ms[0].nrows))
    return Mat(ms[0].field, rows)


def _same_field(*ms: Mat) -> None:
    f = ms[0].field
    if any(m.field != f for m in ms[1:]):
        raise FieldMismatch("matrices over different fields")


def mat_add(a: Mat, b: Mat) -> Mat:
    _same_field(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    f = a.field
    return Mat(f, tuple(tuple(f.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)))


def mat_sub(a: Mat, b: Mat) -> Mat:
    _same_field(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {b.shape} from {a.shape}")
    f = a.field
    return Mat(f, tuple(tuple(f.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)))


def mat_neg(a: Mat) -> Mat:
    f = a.field
    return Mat(f, tuple(tuple(f.neg(v) for v in r) for r in a.rows))


def mat_mul(a: Mat, b: Mat) -> Mat:
    _same_field(a, b)
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    f = a.field
    cols = [b.column(c) for c in range(b.ncols)]
    out = []
    for row in a.rows:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = f.add(acc, f.mul(x, y))
            out_row.append(acc)
        out.append(tuple(out_row))
    return Mat(f, tuple(out))


def mat_vec(a: Mat, v: Sequence[int]) -> tuple[int, ...]:
    """``a @ v`` for a plain vector ``v``."""
    if len(v) != a.ncols:
        raise DimensionMismatch(f"cannot apply {a.shape} matrix to length-{len(v)} vector")
    f = a.field
    out = []
    for row in a.rows:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = f.add(acc, f.mul(x, y))
        out.append(acc)
    return tuple(out)


def dot(field: Field, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = field.add(acc, field.mul(x, y))
    return acc


def _eliminate(field: Field, rows: list[list[int]], ncols: int, reduce: bool) -> list[int]:
    """In-place row reduction of ``rows`` over its first ``ncols`` columns.

    Brings the matrix to row-echelon form with unit pivots (reduced form when
    ``reduce``) and returns the pivot columns.
    """
    f = field
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        start = 0 if reduce else r + 1
        for i in range(start, len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def mat_rank(m: Mat) -> int:
    rows = [list(r) for r in m.rows]
    return len(_eliminate(m.field, rows, m.ncols, reduce=False))


def nonzero_cols(m: Mat) -> int:
    """Number of columns with at least one nonzero entry."""
    return sum(1 for c in range(m.ncols) if any(r[c] for r in m.rows))


def nonzero_col_mask(m: Mat) -> tuple[bool, ...]:
    return tuple(any(r[c] for r in m.rows) for c in range(m.ncols))


def mat_det2(m: Mat) -> int:
    if m.shape != (2, 2):
        raise DimensionMismatch(f"det2 needs a 2x2 matrix, got {m.shape}")
    f = m.field
    (a, b), (c, d) = m.rows
    return f.sub(f.mul(a, d), f.mul(b, c))


def mat_solve(a: Mat, b: Mat) -> Mat:
    """Return ``x`` with ``a @ x == b``; ``a`` must be square and nonsingular."""
    _same_field(a, b)
    n = a.nrows
    if a.ncols != n:
        raise DimensionMismatch(f"solve needs a square matrix, got {a.shape}")
    if b.nrows != n:
        raise DimensionMismatch(f"right-hand side has {b.nrows} rows, expected {n}")
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    pivots = _eliminate(a.field, aug, n, reduce=True)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return Mat(a.field, tuple(tuple(r[n:]) for r in aug))


def mat_inv(a: Mat) -> Mat:
    return mat_solve(a, identity(a.field, a.nrows))


def rowspace_canonical(m: Mat) -> Mat:
    """Reduced row-echelon form; equal row spaces give identical results."""
    rows = [list(r) for r in m.rows]
    _eliminate(m.field, rows, m.ncols, reduce=True)
    return Mat(m.field, tuple(tuple(r) for r in rows))
