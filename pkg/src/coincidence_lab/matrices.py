"""Exact integer matrices with signed 64-bit range enforcement.

Python integers never wrap, so "overflow detection" here means every stored
entry and every arithmetic result is checked against the signed 64-bit range
and :class:`~coincidence_lab.errors.IntegerOverflow` is raised when a value
leaves it.  Inputs in this problem domain are desk-scale, so the hard error
is preferable to silently drifting outside the documented range.
"""

from __future__ import annotations

from collections.abc import Sequence

from .errors import DimensionMismatch, IntegerOverflow

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def checked_int64(value: int, context: str = "value") -> int:
    """Return ``value`` unchanged, or raise IntegerOverflow if it exceeds int64."""
    if not (INT64_MIN <= value <= INT64_MAX):
        raise IntegerOverflow(f"{context} {value} exceeds the signed 64-bit range")
    return value


class IntegerMatrix:
    """Immutable integer matrix with positive dimensions.

    >>> a = IntegerMatrix([[1, 2], [3, 4]])
    >>> a.det()
    -2
    >>> (a @ IntegerMatrix.identity(2)) == a
    True
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = len(entries)
        if rows == 0:
            raise DimensionMismatch("matrix must have at least one row")
        cols = len(entries[0])
        if cols == 0:
            raise DimensionMismatch("matrix must have at least one column")
        data = []
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise DimensionMismatch(
                    f"row {i} has {len(row)} entries, expected {cols}"
                )
            data.append(tuple(checked_int64(int(v), "matrix entry") for v in row))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(data))

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = ", ".join(str(list(row)) for row in self.entries)
        return f"IntegerMatrix([{body}])"

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        self._require_same_shape(other)
        return IntegerMatrix(
            [
                [x + y for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        self._require_same_shape(other)
        return IntegerMatrix(
            [
                [x - y for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix([[-x for x in row] for row in self.entries])

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        product = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    acc += self.entries[i][k] * other.entries[k][j]
                row.append(checked_int64(acc, "matrix product entry"))
            product.append(row)
        return IntegerMatrix(product)

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DimensionMismatch("determinant requires a square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for t in range(n - 1):
            if a[t][t] == 0:
                for i in range(t + 1, n):
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    num = a[i][j] * a[t][t] - a[i][t] * a[t][j]
                    a[i][j] = num // prev  # division is exact in Bareiss
            prev = a[t][t]
        return checked_int64(sign * a[n - 1][n - 1], "determinant")

    def minor_det(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> int:
        """Determinant of the submatrix picked by 0-based row/column indices."""
        if len(row_idx) != len(col_idx):
            raise DimensionMismatch("minor requires equally many rows and columns")
        if not row_idx:
            return 1
        sub = [[self.entries[i][j] for j in col_idx] for i in row_idx]
        return IntegerMatrix(sub).det()

    def _require_same_shape(self, other: IntegerMatrix) -> None:
        if self.shape() != other.shape():
            raise DimensionMismatch(
                f"shape {self.shape()} does not match {other.shape()}"
            )


def stack_rows(blocks: Sequence[IntegerMatrix]) -> IntegerMatrix:
    """Stack matrices with equal column counts into one tall matrix."""
    if not blocks:
        raise DimensionMismatch("cannot stack an empty list of matrices")
    cols = blocks[0].cols
    rows: list[list[int]] = []
    for block in blocks:
        if block.cols != cols:
            raise DimensionMismatch("stacked blocks must share a column count")
        rows.extend(list(r) for r in block.entries)
    return IntegerMatrix(rows)
