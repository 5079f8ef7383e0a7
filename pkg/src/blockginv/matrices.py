"""Dense matrices over Q(i) with exact elimination.

Matrices are immutable, stored row-major, and sized rows x cols where either
dimension may be zero (empty bases fall out of rank computations naturally).
All elimination uses exact division with the first nonzero entry in column
order as pivot, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import ZERO, GaussianRational

_Entry = GaussianRational | int | Fraction


class ShapeMismatch(ValueError):
    """Two matrices whose shapes do not fit the requested operation."""

    def __init__(self, op: str, left: tuple[int, int], right: tuple[int, int]):
        super().__init__(
            f"{op}: shapes {left[0]}x{left[1]} and {right[0]}x{right[1]} do not fit"
        )
        self.left = left
        self.right = right


class SingularMatrix(ArithmeticError):
    """Inversion was asked of a matrix without full rank."""


class NotIdempotent(ValueError):
    """A Pierce decomposition was asked for a non-idempotent."""


def _coerce_entry(value: _Entry) -> GaussianRational:
    coerced = GaussianRational._coerce(value)
    if coerced is None:
        raise TypeError(f"cannot use {type(value).__name__} as a matrix entry")
    return coerced


class Matrix:
    """An immutable rows x cols matrix of GaussianRational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Sequence[GaussianRational]):
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self._data = tuple(entries)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[_Entry]]) -> Matrix:
        grid = [[_coerce_entry(x) for x in row] for row in rows]
        height = len(grid)
        width = len(grid[0]) if grid else 0
        if any(len(row) != width for row in grid):
            raise ValueError("rows have unequal lengths")
        return cls(height, width, [x for row in grid for x in row])

    @classmethod
    def identity(cls, n: int) -> Matrix:
        one = GaussianRational(1)
        return cls(n, n, [one if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a matrix from a rectangular grid of blocks.

        Block heights must agree along each grid row and widths along each
        grid column; zero-width and zero-height blocks are allowed.
        """
        if not grid or not grid[0]:
            raise ValueError("empty block grid")
        widths = [b.cols for b in grid[0]]
        data: list[GaussianRational] = []
        for block_row in grid:
            if [b.cols for b in block_row] != widths:
                raise ShapeMismatch(
                    "from_blocks", (block_row[0].rows, block_row[0].cols),
                    (grid[0][0].rows, grid[0][0].cols),
                )
            height = block_row[0].rows
            for b in block_row:
                if b.rows != height:
                    raise ShapeMismatch(
                        "from_blocks", (height, b.cols), (b.rows, b.cols)
                    )
            for i in range(height):
                for b in block_row:
                    data.extend(b._data[i * b.cols:(i + 1) * b.cols])
        return cls(sum(row[0].rows for row in grid), sum(widths), data)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_start: int, row_stop: int,
                  col_start: int, col_stop: int) -> Matrix:
        data = []
        for i in range(row_start, row_stop):
            data.extend(self._data[i * self.cols + col_start:
                                   i * self.cols + col_stop])
        return Matrix(row_stop - row_start, col_stop - col_start, data)

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows,
                      [self._data[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)])

    def is_zero(self) -> bool:
        return not any(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self._data == other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch("add", self.shape, other.shape)
        return Matrix(self.rows, self.cols,
                      [a + b for a, b in zip(self._data, other._data)])

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch("sub", self.shape, other.shape)
        return Matrix(self.rows, self.cols,
                      [a - b for a, b in zip(self._data, other._data)])

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, [-a for a in self._data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeMismatch("mul", self.shape, other.shape)
            inner, width = self.cols, other.cols
            data: list[GaussianRational] = []
            other_rows = [other.row(t) for t in range(inner)]
            for i in range(self.rows):
                acc = [ZERO] * width
                this_row = self.row(i)
                for t in range(inner):
                    a = this_row[t]
                    if not a:
                        continue
                    for j, b in enumerate(other_rows[t]):
                        if b:
                            acc[j] = acc[j] + a * b
                data.extend(acc)
            return Matrix(self.rows, width, data)
        scalar = GaussianRational._coerce(other)
        if scalar is None:
            return NotImplemented
        return Matrix(self.rows, self.cols, [scalar * a for a in self._data])

    def __rmul__(self, other):
        scalar = GaussianRational._coerce(other)
        if scalar is None:
            return NotImplemented
        return Matrix(self.rows, self.cols, [scalar * a for a in self._data])

    def __pow__(self, exponent: int) -> Matrix:
        if not self.is_square:
            raise ShapeMismatch("pow", self.shape, self.shape)
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        result = Matrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            if exponent > 1:
                base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        return "[" + "; ".join(
            ", ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        ) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} {self})"


def rref(matrix: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns (R, rank, pivot_columns). Pivots are chosen as the first
    nonzero entry in column order, division is exact, and pivot rows are
    normalized to 1, so the output is canonical for the row space.
    """
    grid = matrix.to_lists()
    height, width = matrix.rows, matrix.cols
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(width):
        if pivot_row >= height:
            break
        selected = None
        for r in range(pivot_row, height):
            if grid[r][col]:
                selected = r
                break
        if selected is None:
            continue
        grid[pivot_row], grid[selected] = grid[selected], grid[pivot_row]
        inv = grid[pivot_row][col].inverse()
        grid[pivot_row] = [inv * x for x in grid[pivot_row]]
        for r in range(height):
            if r != pivot_row and grid[r][col]:
                factor = grid[r][col]
                pivot_line = grid[pivot_row]
                grid[r] = [x - factor * y for x, y in zip(grid[r], pivot_line)]
        pivot_cols.append(col)
        pivot_row += 1
    flat = [x for row in grid for x in row]
    return Matrix(height, width, flat), len(pivot_cols), tuple(pivot_cols)


def rank(matrix: Matrix) -> int:
    """Rank via forward elimination only (cheaper than full rref)."""
    grid = matrix.to_lists()
    height, width = matrix.rows, matrix.cols
    pivot_row = 0
    for col in range(width):
        if pivot_row >= height:
            break
        selected = None
        for r in range(pivot_row, height):
            if grid[r][col]:
                selected = r
                break
        if selected is None:
            continue
        grid[pivot_row], grid[selected] = grid[selected], grid[pivot_row]
        lead = grid[pivot_row][col]
        for r in range(pivot_row + 1, height):
            if grid[r][col]:
                factor = grid[r][col] / lead
                pivot_line = grid[pivot_row]
                grid[r] = [x - factor * y for x, y in zip(grid[r], pivot_line)]
        pivot_row += 1
    return pivot_row


def inverse(matrix: Matrix) -> Matrix:
    """Exact inverse via elimination on [A | I]; SingularMatrix if rank < n.

    The augmented matrix always has full row rank thanks to the identity
    half, so singularity shows up as a pivot escaping into the right half
    rather than as a rank drop.
    """
    if not matrix.is_square:
        raise ShapeMismatch("inverse", matrix.shape, matrix.shape)
    n = matrix.rows
    augmented = Matrix.from_blocks([[matrix, Matrix.identity(n)]])
    reduced, _, pivot_cols = rref(augmented)
    if pivot_cols[:n] != tuple(range(n)):
        rank_left = sum(1 for c in pivot_cols if c < n)
        raise SingularMatrix(f"rank {rank_left} < {n}")
    return reduced.submatrix(0, n, n, 2 * n)


def kernel_basis(matrix: Matrix) -> Matrix:
    """Columns spanning the null space, one per free column of the rref.

    The result is cols x (cols - rank); for full column rank that is a
    cols x 0 matrix.
    """
    reduced, rank_found, pivot_cols = rref(matrix)
    width = matrix.cols
    free_cols = [c for c in range(width) if c not in pivot_cols]
    one = GaussianRational(1)
    columns = []
    for free in free_cols:
        vec = [ZERO] * width
        vec[free] = one
        for row_idx, pivot_col in enumerate(pivot_cols):
            vec[pivot_col] = -reduced[row_idx, free]
        columns.append(vec)
    data = [columns[j][i] for i in range(width) for j in range(len(free_cols))]
    return Matrix(width, len(free_cols), data)


def column_space_basis(matrix: Matrix) -> Matrix:
    """The pivot columns of the matrix itself, spanning its range."""
    _, rank_found, pivot_cols = rref(matrix)
    data = [matrix[i, c] for i in range(matrix.rows) for c in pivot_cols]
    return Matrix(matrix.rows, rank_found, data)


@dataclass(frozen=True)
class PierceSplit:
    """Corners of T relative to an idempotent e, each stored full-size.

    a = e T e, b = e T (1-e), c = (1-e) T e, d = (1-e) T (1-e); the four
    corners always sum back to T.
    """

    idempotent: Matrix
    a: Matrix
    b: Matrix
    c: Matrix
    d: Matrix


def pierce_split(matrix: Matrix, idempotent: Matrix) -> PierceSplit:
    """Split T into Pierce corners along an idempotent.

    Raises NotIdempotent unless e*e == e, and ShapeMismatch unless e and T
    are square of the same size.
    """
    if not matrix.is_square or matrix.shape != idempotent.shape:
        raise ShapeMismatch("pierce_split", matrix.shape, idempotent.shape)
    if idempotent * idempotent != idempotent:
        raise NotIdempotent("e*e != e")
    complement = Matrix.identity(matrix.rows) - idempotent
    left_e = idempotent * matrix
    left_c = complement * matrix
    return PierceSplit(
        idempotent=idempotent,
        a=left_e * idempotent,
        b=left_e * complement,
        c=left_c * idempotent,
        d=left_c * complement,
    )
