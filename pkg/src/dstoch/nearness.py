"""Frobenius projection onto matrices with unit row and column sums.

The projection B* = (I-J)A(I-J) + J (J the uniform matrix) is the unique
closest matrix to A, in Frobenius distance, among all matrices whose rows and
columns sum to 1.  For a stochastic A it simplifies to A - JA + J, whose
entries are a_ij + (1 - x_j)/n; the per-column slack condition below decides
exactly when that projection is still entrywise nonnegative, i.e. doubly
stochastic, in which case it is also cospectral to A.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    RatMatrix,
    Stochasticity,
    classify,
    column_stats,
    frobenius_distance_sq,
    uniform_matrix,
)
from .errors import InfeasibleError, PreconditionError

__all__ = [
    "ColumnSlack",
    "DsConditionReport",
    "ds_condition",
    "cospectral_ds",
    "nearest_ds",
    "nearest_ds_distance_sq",
]


@dataclass(frozen=True)
class ColumnSlack:
    """Slack record for one column (1-based index j): slack = 1 + n*a_j - x_j."""

    j: int
    x: Fraction
    a: Fraction
    slack: Fraction


@dataclass(frozen=True)
class DsConditionReport:
    """Outcome of the per-column slack test on a stochastic matrix.

    ``holds`` iff every slack is nonnegative, which happens exactly when the
    Frobenius projection onto unit row/column sums stays entrywise
    nonnegative.  ``first_violation`` is the smallest offending column
    (1-based) or None.
    """

    holds: bool
    per_column: tuple[ColumnSlack, ...]
    first_violation: int | None

    def to_text(self) -> str:
        lines = [
            f"j={c.j} x={c.x} a={c.a} slack={c.slack}" for c in self.per_column
        ]
        lines.append(f"holds={'true' if self.holds else 'false'}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "holds": self.holds,
                "per_column": [
                    {
                        "j": c.j,
                        "x_j": str(c.x),
                        "a_j": str(c.a),
                        "slack": str(c.slack),
                    }
                    for c in self.per_column
                ],
                "first_violation": self.first_violation,
            }
        )


def ds_condition(a: RatMatrix) -> DsConditionReport:
    """Evaluate the slack x_j <= 1 + n*a_j for every column of a stochastic matrix."""
    tag = classify(a).tag
    if tag not in (Stochasticity.STOCHASTIC, Stochasticity.DOUBLY_STOCHASTIC):
        raise PreconditionError("matrix must be stochastic")
    n = a.n_rows
    x, mins = column_stats(a)
    records = tuple(
        ColumnSlack(j + 1, x[j], mins[j], 1 + n * mins[j] - x[j]) for j in range(n)
    )
    violations = [c.j for c in records if c.slack < 0]
    return DsConditionReport(
        holds=not violations,
        per_column=records,
        first_violation=violations[0] if violations else None,
    )


def cospectral_ds(a: RatMatrix) -> RatMatrix:
    """Doubly stochastic matrix exactly cospectral to a stochastic one.

    Entries are a_ij + (1 - x_j)/n.  Refuses when a slack is negative, since
    the result would have negative entries; the raw affine projection remains
    available through :func:`nearest_ds`.
    """
    report = ds_condition(a)
    if not report.holds:
        raise InfeasibleError(
            f"column {report.first_violation} has negative slack; "
            "no doubly stochastic cospectral form from this construction",
            column=report.first_violation,
            report=report,
        )
    n = a.n_rows
    x = a.col_sums()
    return RatMatrix(
        [[a[i, j] + Fraction(1 - x[j], n) for j in range(n)] for i in range(n)]
    )


def nearest_ds(a: RatMatrix) -> RatMatrix:
    """Frobenius-nearest matrix with all row and column sums 1.

    Defined for any square matrix as (I-J)A(I-J) + J.  Entries of the output
    may be negative; classify() tells whether it is doubly stochastic.
    """
    n = a.require_square()
    j = uniform_matrix(n)
    p = RatMatrix.identity(n) - j
    return p @ a @ p + j


def nearest_ds_distance_sq(a: RatMatrix) -> Fraction:
    """Exact squared Frobenius gap between a matrix and its projection."""
    return frobenius_distance_sq(a, nearest_ds(a))
