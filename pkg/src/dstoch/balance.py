"""Column balancing: nonnegative generalized doubly stochastic cospectral forms.

Adding a constant offset y_j to every entry of column j keeps all non-dominant
eigenvalues fixed while moving the row-sum eigenvalue by sum(y).  Equalizing
row and column sums pins the offsets to a one-parameter line; this module
exposes that line through the dominant-eigenvalue shift eps, its least
feasible value (the nonnegativity threshold), and the matrices it produces.

The internal parameter y_m (offset of the heaviest column) relates to eps by
eps = n*y_m + x_m - r; both thresholds are reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import FloatMatrix, RatMatrix, column_stats, format_matrix
from .errors import InfeasibleError, NormalizationError, PreconditionError

__all__ = [
    "BalanceReport",
    "balance_offsets",
    "epsilon_threshold",
    "balance",
    "balance_minimal",
    "balance_nr",
    "normalize_to_stochastic",
]


def _require_constant_row_sums(a: RatMatrix) -> Fraction:
    sums = a.row_sums()
    if any(s != sums[0] for s in sums):
        raise PreconditionError("matrix must have constant row sums")
    return sums[0]


def _require_nonneg_constant_rows(a: RatMatrix) -> Fraction:
    a.require_square()
    if not a.is_nonnegative():
        raise PreconditionError("matrix must be entrywise nonnegative")
    return _require_constant_row_sums(a)


def _heaviest_column(x: tuple[Fraction, ...]) -> int:
    # ties break to the smallest index; the balanced family does not depend
    # on this choice, only the reported y parameterization does
    return x.index(max(x))


@dataclass(frozen=True)
class BalanceReport:
    """Full description of the balanced family of one matrix.

    Column indices (``m``, ``tight_columns``) are 1-based, matching the
    usual column numbering in hand calculations.  ``y_threshold`` is the
    least feasible offset of the heaviest column; ``epsilon_threshold`` the
    least feasible dominant-eigenvalue shift; ``b_min`` the matrix at the
    threshold, which is nonnegative with a zero entry in a tight column.
    """

    r: Fraction
    x: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    m: int
    y_threshold: Fraction
    epsilon_threshold: Fraction
    b_min: RatMatrix
    tight_columns: frozenset[int]

    def to_text(self) -> str:
        lines = [
            f"r = {self.r}",
            f"x = {' '.join(str(v) for v in self.x)}",
            f"a = {' '.join(str(v) for v in self.a)}",
            f"m = {self.m}",
            f"y_threshold = {self.y_threshold}",
            f"epsilon_threshold = {self.epsilon_threshold}",
            f"tight_columns = {' '.join(str(j) for j in sorted(self.tight_columns))}",
            "B_min =",
            format_matrix(self.b_min),
        ]
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "r": str(self.r),
                "x": [str(v) for v in self.x],
                "a": [str(v) for v in self.a],
                "m": self.m,
                "y_threshold": str(self.y_threshold),
                "epsilon_threshold": str(self.epsilon_threshold),
                "B_min": [[str(e) for e in row] for row in self.b_min.rows],
                "tight_columns": sorted(self.tight_columns),
            }
        )


def balance_offsets(a: RatMatrix, y_m) -> tuple[Fraction, ...]:
    """Column offsets equalizing row and column sums, parameterized by the
    offset of the heaviest column: y_j = y_m + (x_m - x_j)/n."""
    n = a.require_square()
    _require_constant_row_sums(a)
    x = a.col_sums()
    m = _heaviest_column(x)
    y_m = Fraction(y_m)
    return tuple(y_m + Fraction(x[m] - x[j], n) for j in range(n))


def epsilon_threshold(a: RatMatrix) -> Fraction:
    """Least dominant-eigenvalue shift keeping the balanced matrix nonnegative.

    Equals max_j(x_j - n*a_j) - r over column sums x and column minima a;
    always at least -r.
    """
    r = _require_nonneg_constant_rows(a)
    n = a.n_rows
    x, mins = column_stats(a)
    return max(x[j] - n * mins[j] for j in range(n)) - r


def balance(a: RatMatrix, eps) -> RatMatrix:
    """The balanced matrix with dominant eigenvalue r + eps.

    Entries are a_ij + (r + eps - x_j)/n: nonnegative, all row and column
    sums r + eps, and cospectral to the input away from the dominant
    eigenvalue.  Shifts below the threshold are rejected.
    """
    r = _require_nonneg_constant_rows(a)
    n = a.n_rows
    eps = Fraction(eps)
    threshold = epsilon_threshold(a)
    if eps < threshold:
        x, mins = column_stats(a)
        worst = max(range(n), key=lambda j: x[j] - n * mins[j])
        raise InfeasibleError(
            f"shift {eps} is below the nonnegativity threshold {threshold} "
            f"(column {worst + 1} is binding)",
            column=worst + 1,
            threshold=threshold,
        )
    x = a.col_sums()
    return RatMatrix(
        [
            [a[i, j] + Fraction(r + eps - x[j], n) for j in range(n)]
            for i in range(n)
        ]
    )


def balance_minimal(a: RatMatrix) -> BalanceReport:
    """The balanced family at its threshold, with both parameterizations."""
    r = _require_nonneg_constant_rows(a)
    n = a.n_rows
    x, mins = column_stats(a)
    m = _heaviest_column(x)
    bounds = [x[j] - n * mins[j] for j in range(n)]
    eps_min = max(bounds) - r
    y_min = Fraction(eps_min + r - x[m], n)
    tight = frozenset(j + 1 for j in range(n) if bounds[j] == max(bounds))
    return BalanceReport(
        r=r,
        x=x,
        a=mins,
        m=m + 1,
        y_threshold=y_min,
        epsilon_threshold=eps_min,
        b_min=balance(a, eps_min),
        tight_columns=tight,
    )


def balance_nr(a: RatMatrix) -> RatMatrix:
    """Balanced form with every row and column sum equal to n*r.

    The shift (n-1)r is always feasible: entries are bounded by the row sum,
    so every column sum is at most n*r.  The output's sums do not depend on
    the input's entries, only on its order and row sum.
    """
    r = _require_nonneg_constant_rows(a)
    n = a.n_rows
    eps = (n - 1) * r
    assert eps >= epsilon_threshold(a)
    return balance(a, eps)


#: power-iteration controls for normalize_to_stochastic
_POWER_TOL = 1e-12
_POWER_MAX_ITER = 10_000
_MIN_COMPONENT = 1e-10


def normalize_to_stochastic(a: FloatMatrix) -> tuple[FloatMatrix, float]:
    """Diagonal similarity onto constant row sums, by the dominant eigenvector.

    For nonnegative A with strictly positive dominant eigenvector v, the
    matrix D^-1 A D with D = diag(v) has constant row sums equal to the
    dominant eigenvalue r, preserving the spectrum.  Power iteration runs on
    A + I so that nonnegative matrices with several eigenvalues on the
    spectral circle still converge; inputs whose dominant eigenvector has a
    near-zero component (reducible matrices) are rejected.
    """
    n = a.require_square()
    arr = a.to_numpy()
    if arr.min() < 0:
        raise PreconditionError("matrix must be entrywise nonnegative")
    shifted = arr + np.eye(n)
    v = np.ones(n)
    for _ in range(_POWER_MAX_ITER):
        lam = float(v @ (shifted @ v) / (v @ v))
        residual = float(np.abs(shifted @ v - lam * v).max())
        if residual <= _POWER_TOL * max(1.0, abs(lam)):
            break
        w = shifted @ v
        top = float(w.max())
        if top <= 0:
            raise NormalizationError("power iteration collapsed to zero")
        v = w / top
    else:
        raise NormalizationError(
            f"power iteration did not converge in {_POWER_MAX_ITER} iterations"
        )
    v = v / v.max()
    if v.min() < _MIN_COMPONENT:
        raise NormalizationError(
            "dominant eigenvector has a near-zero component (reducible input)"
        )
    r = lam - 1.0
    scaled = arr * v[np.newaxis, :] / v[:, np.newaxis]
    return FloatMatrix(scaled), r
