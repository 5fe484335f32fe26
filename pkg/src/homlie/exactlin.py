"""Exact rational scalars and small dense linear algebra.

Every quantity in this package is an exact rational number
(:class:`fractions.Fraction`), so equality tests, nondegeneracy decisions
and kernel computations are all exact.  Matrices and vectors are immutable
values; every operation returns a fresh value.  Elimination uses the first
nonzero pivot (no magnitude heuristics), which keeps results deterministic.

Intended for the small dense matrices that show up when working with
structure constants (dimensions well below ~20); there is no sparse format
and no floating point fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[Fraction, int, str]


class SingularMatrixError(ValueError):
    """A matrix that was expected to be invertible is not."""


def rat(value: Scalar) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction into an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Vector:
    """Immutable coordinate column with exact rational entries."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(rat(e) for e in self.entries))

    @staticmethod
    def of(*values: Scalar) -> "Vector":
        return Vector(tuple(rat(v) for v in values))

    @staticmethod
    def zero(dim: int) -> "Vector":
        return Vector((ZERO,) * dim)

    @staticmethod
    def basis(dim: int, index: int) -> "Vector":
        if not 0 <= index < dim:
            raise IndexError(f"basis index {index} out of range for dimension {dim}")
        return Vector(tuple(ONE if i == index else ZERO for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __add__(self, other: "Vector") -> "Vector":
        self._same_dim(other)
        return Vector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._same_dim(other)
        return Vector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.entries))

    def __rmul__(self, scalar: Scalar) -> "Vector":
        c = rat(scalar)
        return Vector(tuple(c * a for a in self.entries))

    def scale(self, scalar: Scalar) -> "Vector":
        return rat(scalar) * self

    def dot(self, other: "Vector") -> Fraction:
        self._same_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), ZERO)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def concat(self, other: "Vector") -> "Vector":
        return Vector(self.entries + other.entries)

    def _same_dim(self, other: "Vector") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        return "Vector[" + ", ".join(str(e) for e in self.entries) + "]"


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major matrix with exact rational entries."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        object.__setattr__(self, "entries", tuple(rat(e) for e in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        nrows = len(rows)
        if nrows == 0:
            raise ValueError("need at least one row")
        ncols = len(rows[0])
        flat: list[Fraction] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(rat(e) for e in row)
        return Matrix(nrows, ncols, tuple(flat))

    @staticmethod
    def from_cols(cols: Sequence[Vector]) -> "Matrix":
        if not cols:
            raise ValueError("need at least one column")
        dim = cols[0].dim
        return Matrix(
            dim, len(cols), tuple(col[i] for i in range(dim) for col in cols)
        )

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (ZERO,) * (rows * cols))

    @staticmethod
    def diagonal(values: Sequence[Scalar]) -> "Matrix":
        n = len(values)
        return Matrix(
            n, n, tuple(rat(values[i]) if i == j else ZERO for i in range(n) for j in range(n))
        )

    @staticmethod
    def block_diag(a: "Matrix", b: "Matrix") -> "Matrix":
        rows = a.rows + b.rows
        cols = a.cols + b.cols
        out = [[ZERO] * cols for _ in range(rows)]
        for i in range(a.rows):
            for j in range(a.cols):
                out[i][j] = a.at(i, j)
        for i in range(b.rows):
            for j in range(b.cols):
                out[a.rows + i][a.cols + j] = b.at(i, j)
        return Matrix.from_rows(out)

    @staticmethod
    def block(grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        rows: list[list[Fraction]] = []
        for band in grid:
            height = band[0].rows
            for m in band:
                if m.rows != height:
                    raise ValueError("inconsistent block heights")
            for i in range(height):
                row: list[Fraction] = []
                for m in band:
                    row.extend(m.at(i, j) for j in range(m.cols))
                rows.append(row)
        return Matrix.from_rows(rows)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, i: int, j: int) -> Fraction:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return Vector(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> Vector:
        return Vector(tuple(self.at(i, j) for i in range(self.rows)))

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def submatrix(self, row_range: range, col_range: range) -> "Matrix":
        return Matrix.from_rows(
            [[self.at(i, j) for j in col_range] for i in row_range]
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __rmul__(self, scalar: Scalar) -> "Matrix":
        c = rat(scalar)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(
                    sum((self.at(i, k) * other.at(k, j) for k in range(self.cols)), ZERO)
                )
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Vector) -> Vector:
        if v.dim != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} to vector of dim {v.dim}")
        return Vector(tuple(self.row(i).dot(v) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        grid = self.row_list()
        n = self.rows
        sign = ONE
        result = ONE
        for c in range(n):
            pivot_row = next((r for r in range(c, n) if grid[r][c] != 0), None)
            if pivot_row is None:
                return ZERO
            if pivot_row != c:
                grid[c], grid[pivot_row] = grid[pivot_row], grid[c]
                sign = -sign
            pivot = grid[c][c]
            result *= pivot
            for r in range(c + 1, n):
                factor = grid[r][c] / pivot
                if factor == 0:
                    continue
                for k in range(c, n):
                    grid[r][k] -= factor * grid[c][k]
        return sign * result

    def rank(self) -> int:
        _, pivots = _rref(self.row_list())
        return len(pivots)

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self) -> str:
        rows = [
            "[" + ", ".join(str(self.at(i, j)) for j in range(self.cols)) + "]"
            for i in range(self.rows)
        ]
        return "Matrix[" + "; ".join(rows) + "]"


def _rref(grid: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduce *grid* in place to reduced row echelon form.

    Returns the grid together with the list of pivot columns.  Pivoting takes
    the first nonzero entry in each column, never the largest one.
    """
    if not grid:
        return grid, []
    nrows, ncols = len(grid), len(grid[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if grid[i][c] != 0), None)
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        pivot = grid[r][c]
        grid[r] = [e / pivot for e in grid[r]]
        for i in range(nrows):
            if i != r and grid[i][c] != 0:
                factor = grid[i][c]
                grid[i] = [a - factor * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return grid, pivots


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix.

    Raises :class:`SingularMatrixError` when the matrix is not invertible,
    which downstream signals a degenerate metric or form, or a twist map
    that is not regular.
    """
    if not m.is_square:
        raise ValueError("only square matrices can be inverted")
    n = m.rows
    grid = [m.row_list()[i] + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    grid, pivots = _rref(grid)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Matrix.from_rows([row[n:] for row in grid])


def solve(m: Matrix, b: Vector) -> Vector:
    """Solve ``m @ x == b`` for a square nonsingular ``m``, exactly."""
    if not m.is_square:
        raise ValueError("solve expects a square matrix")
    if b.dim != m.rows:
        raise ValueError("right-hand side has the wrong dimension")
    grid = [m.row_list()[i] + [b[i]] for i in range(m.rows)]
    grid, pivots = _rref(grid)
    if pivots != list(range(m.cols)):
        raise SingularMatrixError("matrix is singular")
    return Vector(tuple(row[-1] for row in grid))


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of the kernel of *m* in reduced echelon coordinates.

    Each basis vector has a 1 in one free column and the pivot rows solved
    against it; an invertible matrix yields the empty list.
    """
    grid, pivots = _rref(m.row_list())
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        coords = [ZERO] * m.cols
        coords[f] = ONE
        for r, p in enumerate(pivots):
            coords[p] = -grid[r][f]
        basis.append(Vector(tuple(coords)))
    return basis


def in_span(basis: Iterable[Vector], v: Vector) -> bool:
    """Exact membership of *v* in the span of *basis* (empty basis spans 0)."""
    cols = list(basis)
    if not cols:
        return v.is_zero()
    without = Matrix.from_cols(cols)
    with_v = Matrix.from_cols(cols + [v])
    return without.rank() == with_v.rank()
