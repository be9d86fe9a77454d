"""Orthogonal embedding of (n-1)-order blocks into unit row/column sum matrices.

Conjugating 1 (+) X by an orthogonal matrix whose first column is the
normalized all-ones vector produces a matrix with all row and column sums 1
and spectrum {1} union spectrum(X); the inverse direction recovers X.  Built
on that: realize any conjugate-closed spectrum with dominant entry 1 as such
a matrix via a companion block, and lift it to a nonnegative matrix by a
uniform shift.

This is the floating-point half of the package; tolerances are fixed module
constants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .core import FloatMatrix
from .errors import BasisError, DimensionError, MembershipError, PreconditionError
from .spectra import SpectrumList, companion, poly_from_spectrum

__all__ = [
    "BasisSource",
    "OrthoBasis",
    "canonical_basis",
    "user_basis",
    "random_basis",
    "embed",
    "extract",
    "realize_cospectral",
    "realize_nonneg",
    "ASSEMBLY_TOL",
    "MEMBERSHIP_TOL",
    "EXTRACT_TOL",
    "SPECTRAL_TOL",
]

#: orthogonality / first-column / symmetry checks at assembly time
ASSEMBLY_TOL = 1e-12
#: row/column sums of embedded matrices
MEMBERSHIP_TOL = 1e-10
#: acceptance window when pulling a matrix back through the embedding
EXTRACT_TOL = 1e-8
#: characteristic polynomial coefficient comparisons
SPECTRAL_TOL = 1e-9
#: entries above this count as nonnegative (float assembly noise)
NONNEG_TOL = -1e-10


class BasisSource(enum.Enum):
    CANONICAL = "CANONICAL"
    USER_SUPPLIED = "USER_SUPPLIED"


@dataclass(frozen=True)
class OrthoBasis:
    """Orthogonal matrix whose first column is the normalized all-ones vector.

    Validated on construction: U^T U = I and first column 1/sqrt(n) within
    ASSEMBLY_TOL; canonical bases are additionally symmetric involutions.
    """

    u: FloatMatrix
    source: BasisSource

    def __post_init__(self):
        n = self.u.require_square()
        arr = self.u.to_numpy()
        if np.abs(arr.T @ arr - np.eye(n)).max() > ASSEMBLY_TOL:
            raise BasisError("matrix is not orthogonal within tolerance")
        lead = 1.0 / sqrt(n)
        if np.abs(arr[:, 0] - lead).max() > ASSEMBLY_TOL:
            raise BasisError("first column is not the normalized all-ones vector")
        if self.source is BasisSource.CANONICAL:
            if np.abs(arr - arr.T).max() > ASSEMBLY_TOL:
                raise BasisError("canonical basis must be symmetric")
            if np.abs(arr @ arr - np.eye(n)).max() > ASSEMBLY_TOL:
                raise BasisError("canonical basis must be an involution")

    @property
    def n(self) -> int:
        return self.u.n_rows


def canonical_basis(n: int) -> OrthoBasis:
    """The symmetric orthogonal involution with leading all-ones column.

    Block form: top-left 1/sqrt(n), first row/column 1/sqrt(n) throughout,
    and lower-right block I - (1 + 1/sqrt(n)) times the uniform matrix of
    order n-1.
    """
    if n < 1:
        raise DimensionError("order must be at least 1")
    arr = np.empty((n, n))
    lead = 1.0 / sqrt(n)
    arr[:, 0] = lead
    arr[0, :] = lead
    if n > 1:
        block = np.eye(n - 1) - (1.0 + lead) / (n - 1)
        arr[1:, 1:] = block
    return OrthoBasis(FloatMatrix(arr), BasisSource.CANONICAL)


def user_basis(u: FloatMatrix) -> OrthoBasis:
    """Wrap and validate a caller-supplied orthogonal basis."""
    return OrthoBasis(u, BasisSource.USER_SUPPLIED)


def random_basis(n: int, seed: int) -> OrthoBasis:
    """Random orthogonal basis with leading all-ones column, reproducible by seed.

    Gram-Schmidt on (all-ones, random vectors) with a second orthogonalization
    pass; degenerate draws are redrawn.
    """
    if n < 1:
        raise DimensionError("order must be at least 1")
    rng = np.random.default_rng(seed)
    cols = [np.ones(n) / sqrt(n)]
    while len(cols) < n:
        v = rng.standard_normal(n)
        for _ in range(2):
            for c in cols:
                v = v - (c @ v) * c
        norm = np.linalg.norm(v)
        if norm < 1e-8:
            continue
        cols.append(v / norm)
    return OrthoBasis(FloatMatrix(np.column_stack(cols)), BasisSource.USER_SUPPLIED)


def embed(basis: OrthoBasis, x: FloatMatrix) -> FloatMatrix:
    """U (1 (+) X) U^T: a matrix with unit row/column sums and spectrum
    {1} union spectrum(X)."""
    n = basis.n
    if x.shape != (n - 1, n - 1):
        raise DimensionError(
            f"block must be {n - 1}-by-{n - 1} for a basis of order {n}"
        )
    u = basis.u.to_numpy()
    block = np.zeros((n, n))
    block[0, 0] = 1.0
    block[1:, 1:] = x.to_numpy()
    return FloatMatrix(u @ block @ u.T)


def extract(basis: OrthoBasis, a: FloatMatrix) -> FloatMatrix:
    """Inverse of :func:`embed`: recover X from a unit row/column sum matrix.

    Conjugates by the basis and checks that the first row and column of the
    result are (1, 0, ..., 0) within EXTRACT_TOL, which is equivalent to the
    input having unit row and column sums.
    """
    n = basis.n
    if n == 1:
        raise DimensionError("order-1 matrices have no block to extract")
    if a.shape != (n, n):
        raise DimensionError(f"matrix must be {n}-by-{n} for this basis")
    if any(abs(s - 1.0) > EXTRACT_TOL for s in a.row_sums() + a.col_sums()):
        raise MembershipError("row and column sums must equal 1 within tolerance")
    u = basis.u.to_numpy()
    m = u.T @ a.to_numpy() @ u
    first = np.concatenate([m[0, :], m[1:, 0]])
    target = np.concatenate([[1.0], np.zeros(2 * n - 2)])
    if np.abs(first - target).max() > EXTRACT_TOL:
        raise MembershipError(
            "conjugated matrix does not split off the unit eigenvalue"
        )
    return FloatMatrix(m[1:, 1:])


def _require_unit_perron(s: SpectrumList) -> None:
    re_p, im_p = s.perron
    if abs(re_p - 1) > Fraction(1, 10**12) or abs(im_p) > Fraction(1, 10**12):
        raise PreconditionError("designated dominant entry must equal 1")


def realize_cospectral(s: SpectrumList, basis: OrthoBasis | None = None) -> FloatMatrix:
    """Matrix with unit row/column sums realizing a spectrum whose dominant
    entry is 1.

    The non-dominant entries go through their companion matrix, embedded via
    the canonical basis unless another is supplied.
    """
    _require_unit_perron(s)
    n = s.size
    if basis is None:
        basis = canonical_basis(n)
    elif basis.n != n:
        raise DimensionError(f"basis order {basis.n} does not match spectrum size {n}")
    if n == 1:
        return FloatMatrix([[1.0]])
    c = companion(poly_from_spectrum(s.rest()))
    return embed(basis, c.to_float())


def realize_nonneg(
    s: SpectrumList, basis: OrthoBasis | None = None
) -> tuple[float, FloatMatrix]:
    """Nonnegative matrix with constant row/column sums 1 + k realizing the
    spectrum with its dominant entry moved from 1 to 1 + k.

    k is the least uniform shift making the embedded matrix entrywise
    nonnegative: n * max(0, -min entry), since the uniform matrix has entries
    1/n.  A min entry above NONNEG_TOL counts as nonnegative, so matrices
    that are nonnegative up to float roundoff keep k = 0.  Returns
    (k, shifted matrix).
    """
    b0 = realize_cospectral(s, basis)
    n = b0.n_rows
    low = b0.min_entry()
    if low >= NONNEG_TOL:
        return 0.0, b0
    k = n * -low
    shifted = FloatMatrix(b0.to_numpy() + k / n)
    return k, shifted
