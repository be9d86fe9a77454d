"""Exact rational and floating dense matrices with stochasticity predicates.

Scalars are :class:`fractions.Fraction` throughout the exact half, so every
construction built on top of this module is bit-reproducible.  All matrix
types are immutable values; operations return new objects.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

import numpy as np

from .errors import DimensionError, FormatError

__all__ = [
    "RatMatrix",
    "FloatMatrix",
    "StochClass",
    "Stochasticity",
    "uniform_matrix",
    "column_stats",
    "classify",
    "frobenius_distance_sq",
    "parse_scalar",
    "parse_matrix",
    "format_matrix",
    "parse_float_matrix",
    "format_float_matrix",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        # floats are rejected: exact constructions must never absorb rounding
        raise TypeError("exact matrices take Fraction/int entries, not float")
    return Fraction(value)


class RatMatrix:
    """Dense matrix of exact rationals, stored row-major and immutable."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(_as_fraction(e) for e in row) for row in rows)
        if not grid or not grid[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise DimensionError("all rows must have the same length")
        self._rows = grid

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "RatMatrix":
        n_cols = n_rows if n_cols is None else n_cols
        return cls([[0] * n_cols for _ in range(n_rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def require_square(self) -> int:
        if not self.is_square:
            raise DimensionError(f"matrix must be square, got {self.shape}")
        return self.n_rows

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self._rows)
        return f"RatMatrix({self.n_rows}x{self.n_cols}: {body})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return NotImplemented
        self._require_same_shape(other)
        return RatMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return NotImplemented
        self._require_same_shape(other)
        return RatMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-e for e in row] for row in self._rows])

    def __mul__(self, scalar) -> "RatMatrix":
        if not isinstance(scalar, Rational):
            return NotImplemented
        c = Fraction(scalar)
        return RatMatrix([[e * c for e in row] for row in self._rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise DimensionError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        cols = other.transpose()._rows
        return RatMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows]
        )

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self._rows)))

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def trace(self) -> Fraction:
        self.require_square()
        return sum(self._rows[i][i] for i in range(self.n_rows))

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row) for row in self._rows)

    def col_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(col) for col in zip(*self._rows))

    def min_entry(self) -> Fraction:
        return min(min(row) for row in self._rows)

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for row in self._rows for e in row)

    def _require_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def to_float(self) -> "FloatMatrix":
        return FloatMatrix([[float(e) for e in row] for row in self._rows])


class FloatMatrix:
    """Dense matrix of finite 64-bit floats, immutable."""

    __slots__ = ("_a",)

    def __init__(self, rows):
        if isinstance(rows, np.ndarray):
            a = rows.astype(float, copy=True)
        else:
            a = np.array([[float(e) for e in row] for row in rows], dtype=float)
        if a.ndim != 2 or a.size == 0:
            raise DimensionError("matrix must have at least one row and column")
        if not np.all(np.isfinite(a)):
            raise ValueError("float matrix entries must be finite")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def identity(cls, n: int) -> "FloatMatrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "FloatMatrix":
        return cls(np.zeros((n_rows, n_rows if n_cols is None else n_cols)))

    @property
    def n_rows(self) -> int:
        return self._a.shape[0]

    @property
    def n_cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def require_square(self) -> int:
        if not self.is_square:
            raise DimensionError(f"matrix must be square, got {self.shape}")
        return self.n_rows

    def __getitem__(self, key: tuple[int, int]) -> float:
        i, j = key
        return float(self._a[i, j])

    def __eq__(self, other) -> bool:
        return isinstance(other, FloatMatrix) and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash(self._a.tobytes() + bytes(str(self.shape), "ascii"))

    def __repr__(self) -> str:
        return f"FloatMatrix({self.n_rows}x{self.n_cols})"

    def __add__(self, other: "FloatMatrix") -> "FloatMatrix":
        if not isinstance(other, FloatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FloatMatrix(self._a + other._a)

    def __sub__(self, other: "FloatMatrix") -> "FloatMatrix":
        if not isinstance(other, FloatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FloatMatrix(self._a - other._a)

    def __mul__(self, scalar) -> "FloatMatrix":
        if not isinstance(scalar, (int, float, Rational)):
            return NotImplemented
        return FloatMatrix(self._a * float(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "FloatMatrix") -> "FloatMatrix":
        if not isinstance(other, FloatMatrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return FloatMatrix(self._a @ other._a)

    def transpose(self) -> "FloatMatrix":
        return FloatMatrix(self._a.T)

    @property
    def T(self) -> "FloatMatrix":
        return self.transpose()

    def row_sums(self) -> tuple[float, ...]:
        return tuple(float(s) for s in self._a.sum(axis=1))

    def col_sums(self) -> tuple[float, ...]:
        return tuple(float(s) for s in self._a.sum(axis=0))

    def min_entry(self) -> float:
        return float(self._a.min())

    def to_numpy(self) -> np.ndarray:
        return self._a.copy()

    def allclose(self, other: "FloatMatrix", tol: float) -> bool:
        return self.shape == other.shape and bool(
            np.all(np.abs(self._a - other._a) <= tol)
        )


class Stochasticity(enum.Enum):
    """Row/column-sum structure tags, from least to most specific."""

    GENERAL = "GENERAL"
    NONNEGATIVE_ONLY = "NONNEGATIVE_ONLY"
    R_GEN_STOCHASTIC = "R_GEN_STOCHASTIC"
    R_GEN_DOUBLY_STOCHASTIC = "R_GEN_DOUBLY_STOCHASTIC"
    STOCHASTIC = "STOCHASTIC"
    DOUBLY_STOCHASTIC = "DOUBLY_STOCHASTIC"


@dataclass(frozen=True)
class StochClass:
    """Classification result: the most specific tag plus the row-sum value.

    ``r`` is None exactly when the tag carries no row-sum information
    (GENERAL, NONNEGATIVE_ONLY).
    """

    tag: Stochasticity
    r: Fraction | None = None

    def __str__(self) -> str:
        if self.r is None:
            return self.tag.value
        return f"{self.tag.value} r={self.r}"


def uniform_matrix(n: int) -> RatMatrix:
    """The n-by-n matrix with every entry 1/n: the rank-one averaging projector."""
    if n < 1:
        raise DimensionError("order must be at least 1")
    e = Fraction(1, n)
    return RatMatrix([[e] * n for _ in range(n)])


def column_stats(a: RatMatrix) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Per-column sums and minima of a square matrix, as two n-vectors."""
    a.require_square()
    sums = a.col_sums()
    mins = tuple(min(a.col(j)) for j in range(a.n_cols))
    return sums, mins


def classify(a: RatMatrix) -> StochClass:
    """Most specific stochasticity tag, with row/column sums tested exactly.

    A constant row sum r with all column sums also equal to r yields the
    doubly stochastic tags; nonnegativity plus r = 1 upgrades to the
    unqualified STOCHASTIC / DOUBLY_STOCHASTIC names.
    """
    a.require_square()
    row_sums = a.row_sums()
    r = row_sums[0]
    nonneg = a.is_nonnegative()
    if any(s != r for s in row_sums):
        tag = Stochasticity.NONNEGATIVE_ONLY if nonneg else Stochasticity.GENERAL
        return StochClass(tag)
    doubly = all(s == r for s in a.col_sums())
    if doubly:
        if nonneg and r == 1:
            return StochClass(Stochasticity.DOUBLY_STOCHASTIC, r)
        return StochClass(Stochasticity.R_GEN_DOUBLY_STOCHASTIC, r)
    if nonneg and r == 1:
        return StochClass(Stochasticity.STOCHASTIC, r)
    return StochClass(Stochasticity.R_GEN_STOCHASTIC, r)


def frobenius_distance_sq(a: RatMatrix, b: RatMatrix) -> Fraction:
    """Squared Frobenius distance; squared so the value stays rational."""
    a._require_same_shape(b)
    return sum(
        (x - y) ** 2 for r1, r2 in zip(a.rows, b.rows) for x, y in zip(r1, r2)
    )


_ENTRY_RE = re.compile(r"-?\d+(?:/\d+|\.\d+)?$")


def parse_scalar(token: str) -> Fraction:
    """Parse one entry: integer, fraction p/q, or decimal, all exact."""
    token = token.strip()
    if not _ENTRY_RE.match(token):
        raise FormatError(f"bad entry {token!r}: expected integer, p/q or decimal")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise FormatError(f"bad entry {token!r}: zero denominator") from None


def _data_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_matrix(text: str) -> RatMatrix:
    """Parse the canonical matrix text format into an exact matrix.

    One row per non-empty line, entries separated by whitespace, ``#``
    starts a comment, blank lines are ignored.  Decimal entries convert
    exactly (powers of ten), so parsing is bit-exact.
    """
    rows = [[parse_scalar(tok) for tok in line.split()] for line in _data_lines(text)]
    if not rows:
        raise FormatError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise FormatError("all rows must have the same number of entries")
    return RatMatrix(rows)


def format_matrix(a: RatMatrix) -> str:
    """Canonical text form: lowest-terms entries, single spaces, one row per line."""
    return "\n".join(" ".join(str(e) for e in row) for row in a.rows)


def parse_float_matrix(text: str) -> FloatMatrix:
    """Parse a matrix in floating mode; accepts float literals and p/q entries."""
    rows = []
    for line in _data_lines(text):
        row = []
        for tok in line.split():
            try:
                row.append(float(tok))
            except ValueError:
                try:
                    row.append(float(Fraction(tok)))
                except (ValueError, ZeroDivisionError):
                    raise FormatError(f"bad float entry {tok!r}") from None
        rows.append(row)
    if not rows:
        raise FormatError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise FormatError("all rows must have the same number of entries")
    return FloatMatrix(rows)


def format_float_matrix(a: FloatMatrix) -> str:
    """Text form with 17 significant digits, enough to round-trip every float."""
    return "\n".join(
        " ".join(format(a[i, j], ".17g") for j in range(a.n_cols))
        for i in range(a.n_rows)
    )
