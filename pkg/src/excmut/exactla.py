"""Exact linear algebra over the rationals.

Matrices are immutable and hold :class:`fractions.Fraction` entries.  All
elimination uses the same pivot rule (columns left to right, first nonzero
row from the top), so bases returned by :func:`kernel_basis` are
reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class Matrix:
    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, data=None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"negative shape {rows}x{cols}")
        if data is None:
            data = tuple((_ZERO,) * cols for _ in range(rows))
        else:
            data = tuple(tuple(_frac(x) for x in row) for row in data)
            if len(data) != rows or any(len(row) != cols for row in data):
                raise DimensionMismatch(f"entries do not form a {rows}x{cols} array")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    # constructors

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        return cls(rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"], rows: int | None = None) -> "Matrix":
        if not blocks:
            return cls(rows or 0, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise DimensionMismatch("hstack: row counts differ")
        data = [sum((b.data[i] for b in blocks), ()) for i in range(r)]
        return cls(r, sum(b.cols for b in blocks), data)

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"], cols: int | None = None) -> "Matrix":
        if not blocks:
            return cls(0, cols or 0)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise DimensionMismatch("vstack: column counts differ")
        data = [row for b in blocks for row in b.data]
        return cls(len(data), c, data)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls.vstack([cls.hstack(list(row)) for row in grid])

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [[_ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                data[r0 + i][c0:c0 + b.cols] = b.data[i]
            r0 += b.rows
            c0 += b.cols
        return cls(rows, cols, data)

    # value semantics

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def flat(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    # arithmetic

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} vs {other.shape}")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"sub {self.shape} vs {other.shape}")
        return Matrix(self.rows, self.cols,
                      [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"matmul {self.shape} @ {other.shape}")
        ocols = other.columns()
        data = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            data.append([sum((a * col[k] for k, a in nz), _ZERO) for col in ocols])
        return Matrix(self.rows, other.cols, data)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch(f"apply {self.shape} to vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), _ZERO) for row in self.data)

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


# elimination


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = m[r] = [x * inv for x in pr]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [a - f * b if b else a for a, b in zip(mi, pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    rows, piv = _rref([list(r) for r in M.data], M.cols)
    return Matrix(M.rows, M.cols, rows), piv


def rank(M: Matrix) -> int:
    return len(_rref([list(r) for r in M.data], M.cols)[1])


def rank_of_vectors(vectors: Iterable[Sequence], length: int) -> int:
    vs = [list(map(_frac, v)) for v in vectors]
    if not vs:
        return 0
    return len(_rref(vs, length)[1])


def kernel_basis(M: Matrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column."""
    rows, piv = _rref([list(r) for r in M.data], M.cols)
    pivset = set(piv)
    basis = []
    for free in range(M.cols):
        if free in pivset:
            continue
        v = [_ZERO] * M.cols
        v[free] = _ONE
        for i, pc in enumerate(piv):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b: Sequence) -> tuple | None:
    """One exact solution of ``M x = b``, or ``None`` if inconsistent."""
    if len(b) != M.rows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {M.rows}")
    aug = [list(r) + [_frac(x)] for r, x in zip(M.data, b)]
    rows, piv = _rref(aug, M.cols + 1)
    if piv and piv[-1] == M.cols:
        return None
    x = [_ZERO] * M.cols
    for i, pc in enumerate(piv):
        x[pc] = rows[i][M.cols]
    return tuple(x)


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """Exact ``X`` with ``A X = B`` (column by column), or ``None``."""
    if A.rows != B.rows:
        raise DimensionMismatch(f"solve_matrix {A.shape} vs {B.shape}")
    aug = [list(r) + list(s) for r, s in zip(A.data, B.data)]
    rows, piv = _rref(aug, A.cols + B.cols)
    npiv = [p for p in piv if p < A.cols]
    if len(npiv) != len(piv):
        return None
    X = [[_ZERO] * B.cols for _ in range(A.cols)]
    for i, pc in enumerate(npiv):
        X[pc] = rows[i][A.cols:]
    return Matrix(A.cols, B.cols, X)


def column_space_basis(M: Matrix) -> Matrix:
    """Independent columns of ``M`` (those at pivot positions)."""
    _, piv = _rref([list(r) for r in M.data], M.cols)
    return Matrix.from_columns([M.column(j) for j in piv], M.rows)


def extend_to_basis(span: Sequence[Sequence], candidates: Sequence[Sequence], length: int) -> list[int]:
    """Indices of candidates that, added greedily, extend ``span`` independently."""
    chosen = []
    current = [list(map(_frac, v)) for v in span]
    r = rank_of_vectors(current, length)
    for idx, c in enumerate(candidates):
        trial = current + [list(map(_frac, c))]
        r2 = rank_of_vectors(trial, length)
        if r2 > r:
            current, r = trial, r2
            chosen.append(idx)
    return chosen
