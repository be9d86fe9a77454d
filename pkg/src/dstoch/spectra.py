"""Characteristic polynomials, spectra, companion matrices, exact nullspaces.

Everything on the rational side is exact: the characteristic polynomial is
computed by the Faddeev-LeVerrier recurrence over Fractions, so cospectrality
is decidable by literal polynomial equality with no root finding anywhere.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .core import FloatMatrix, RatMatrix, parse_scalar
from .errors import (
    ConjugacyError,
    DimensionError,
    FormatError,
    PerronWarning,
    PreconditionError,
)

__all__ = [
    "Poly",
    "SpectrumList",
    "charpoly",
    "charpoly_float",
    "cospectral",
    "poly_from_spectrum",
    "companion",
    "nullspace",
    "similar_to_unit_sums",
    "parse_spectrum",
    "format_poly",
]

#: two spectrum entries pair as conjugates when both parts differ by at most this
CONJUGACY_TOL = Fraction(1, 10**10)


class Poly:
    """Polynomial with rational coefficients, stored lowest degree first.

    The zero polynomial is the single coefficient 0; otherwise trailing zero
    coefficients are stripped so the leading coefficient is nonzero.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable):
        c = [Fraction(x) for x in coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [Fraction(0)]
        self._c = tuple(c)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return self._c == (Fraction(0),)

    @property
    def is_monic(self) -> bool:
        return self._c[-1] == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Poly({' '.join(str(c) for c in self._c)})"

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, x in enumerate(b):
            merged[i] += x
        return Poly(merged)

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self._c])

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return Poly([x * other for x in self._c])
        if not isinstance(other, Poly):
            return NotImplemented
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x == 0:
                continue
            for j, y in enumerate(other._c):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    @classmethod
    def x_minus(cls, root) -> "Poly":
        return cls([-Fraction(root), Fraction(1)])


def format_poly(p: Poly) -> str:
    """One line of space-separated coefficients, lowest degree first."""
    return " ".join(str(c) for c in p.coefficients)


def charpoly(a: RatMatrix) -> Poly:
    """Monic characteristic polynomial det(xI - A), exact.

    Faddeev-LeVerrier recurrence: M_k = A M_{k-1} + c_{n-k+1} I and
    c_{n-k} = -tr(A M_k)/k; the divisions by k are exact over Fractions.
    """
    n = a.require_square()
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = RatMatrix.identity(n)
    am = RatMatrix.zeros(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        m = am + c * ident
        am = a @ m
        c = Fraction(-am.trace(), k)
        coeffs[n - k] = c
    return Poly(coeffs)


def charpoly_float(a: FloatMatrix) -> tuple[float, ...]:
    """Same recurrence instantiated over floats; coefficients lowest degree first."""
    n = a.require_square()
    arr = a.to_numpy()
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    am = np.zeros((n, n))
    c = 1.0
    ident = np.eye(n)
    for k in range(1, n + 1):
        m = am + c * ident
        am = arr @ m
        c = -np.trace(am) / k
        coeffs[n - k] = c
    return tuple(float(x) for x in coeffs)


def cospectral(a: RatMatrix, b: RatMatrix) -> bool:
    """True iff the two matrices have identical characteristic polynomials."""
    a.require_square()
    b.require_square()
    if a.n_rows != b.n_rows:
        raise DimensionError("cospectrality needs matrices of the same order")
    return charpoly(a) == charpoly(b)


_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>-?\d+(?:/\d+|\.\d+)?)"
    r"(?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+|\.\d+)?)\s*[iI])?\s*$"
)


def _parse_complex(token: str) -> tuple[Fraction, Fraction]:
    m = _COMPLEX_RE.match(token)
    if not m:
        raise FormatError(f"bad spectrum entry {token!r}: expected `re` or `re+im i`")
    re_part = parse_scalar(m.group("re"))
    if m.group("im") is None:
        return re_part, Fraction(0)
    im_part = parse_scalar(m.group("im"))
    if m.group("sign") == "-":
        im_part = -im_part
    return re_part, im_part


def _coerce_entry(value) -> tuple[Fraction, Fraction]:
    if isinstance(value, tuple):
        re_part, im_part = value
        return Fraction(re_part), Fraction(im_part)
    if isinstance(value, complex):
        raise TypeError("pass exact (re, im) pairs, not binary complex numbers")
    return Fraction(value), Fraction(0)


def _conjugate_pairs(
    entries: Sequence[tuple[Fraction, Fraction]],
) -> tuple[list[int], list[tuple[int, int]]]:
    """Split entry indices into reals and greedily matched conjugate pairs.

    Each entry with positive imaginary part is matched to the nearest entry
    with negative imaginary part; both components must agree within
    CONJUGACY_TOL or the list is rejected.
    """
    reals = [i for i, (_, im) in enumerate(entries) if im == 0]
    pos = [i for i, (_, im) in enumerate(entries) if im > 0]
    neg = [i for i, (_, im) in enumerate(entries) if im < 0]
    pairs: list[tuple[int, int]] = []
    unmatched = list(neg)
    for i in pos:
        re_i, im_i = entries[i]
        best = None
        best_dist = None
        for j in unmatched:
            re_j, im_j = entries[j]
            dist = max(abs(re_i - re_j), abs(im_i + im_j))
            if best_dist is None or dist < best_dist:
                best, best_dist = j, dist
        if best is None or best_dist > CONJUGACY_TOL:
            raise ConjugacyError(
                f"entry {entries[i]} has no conjugate partner within tolerance"
            )
        unmatched.remove(best)
        pairs.append((i, best))
    if unmatched:
        re_j, im_j = entries[unmatched[0]]
        raise ConjugacyError(
            f"entry ({re_j}, {im_j}) has no conjugate partner within tolerance"
        )
    return reals, pairs


class SpectrumList:
    """Multiset of complex values closed under conjugation, with a designated
    dominant entry.

    Entries are exact (re, im) Fraction pairs; decimal text converts exactly.
    Conjugate closure is validated on construction.  The designated entry is
    expected to be real and to dominate every modulus; a violation is reported
    as a :class:`PerronWarning`, not an error, since the list may be a
    candidate spectrum rather than a realized one.
    """

    __slots__ = ("_entries", "_perron_index")

    def __init__(self, entries: Iterable, perron_index: int = 0):
        items = tuple(_coerce_entry(e) for e in entries)
        if not items:
            raise PreconditionError("spectrum must contain at least one entry")
        if not 0 <= perron_index < len(items):
            raise PreconditionError(f"perron_index {perron_index} out of range")
        _conjugate_pairs(items)
        self._entries = items
        self._perron_index = perron_index
        self._check_dominance()

    def _check_dominance(self) -> None:
        re_p, im_p = self.perron
        if im_p != 0 or re_p < 0:
            warnings.warn(
                f"designated dominant entry ({re_p}, {im_p}) is not real nonnegative",
                PerronWarning,
                stacklevel=3,
            )
            return
        bound = re_p * re_p
        for re_k, im_k in self._entries:
            if re_k * re_k + im_k * im_k > bound:
                warnings.warn(
                    f"entry ({re_k}, {im_k}) exceeds the designated dominant "
                    f"entry {re_p} in modulus",
                    PerronWarning,
                    stacklevel=3,
                )
                return

    @property
    def entries(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._entries

    @property
    def perron_index(self) -> int:
        return self._perron_index

    @property
    def perron(self) -> tuple[Fraction, Fraction]:
        return self._entries[self._perron_index]

    @property
    def size(self) -> int:
        return len(self._entries)

    def rest(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """All entries except the designated dominant one."""
        return tuple(
            e for i, e in enumerate(self._entries) if i != self._perron_index
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpectrumList)
            and self._entries == other._entries
            and self._perron_index == other._perron_index
        )

    def __repr__(self) -> str:
        return f"SpectrumList({self._entries!r}, perron_index={self._perron_index})"


def parse_spectrum(text: str) -> SpectrumList:
    """One complex entry per line (`re` or `re+im i` / `re-im i`); the first
    line is the designated dominant entry.  Comments and blank lines as in
    the matrix format."""
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append(_parse_complex(line))
    if not entries:
        raise FormatError("no spectrum entries found")
    return SpectrumList(entries)


def poly_from_spectrum(spectrum) -> Poly:
    """Monic real polynomial with the given multiset of roots.

    Conjugate pairs are multiplied first as real quadratics, so the result is
    real by construction and exact whenever the entries are exact.
    Accepts a SpectrumList or any iterable of (re, im) pairs / rationals.
    """
    if isinstance(spectrum, SpectrumList):
        entries = spectrum.entries
    else:
        entries = tuple(_coerce_entry(e) for e in spectrum)
    reals, pairs = _conjugate_pairs(entries)
    p = Poly([1])
    for i, j in pairs:
        re_i, im_i = entries[i]
        re_j, im_j = entries[j]
        p = p * Poly([re_i * re_j - im_i * im_j, -(re_i + re_j), 1])
    for i in reals:
        p = p * Poly.x_minus(entries[i][0])
    return p


def companion(p: Poly) -> RatMatrix:
    """Companion matrix of a monic polynomial: ones on the superdiagonal and
    the negated coefficients (-c0, ..., -c_{k-1}) as the last row."""
    if not p.is_monic:
        raise PreconditionError("companion matrix requires a monic polynomial")
    k = p.degree
    if k < 1:
        raise PreconditionError("companion matrix requires degree >= 1")
    rows = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k - 1):
        rows[i][i + 1] = Fraction(1)
    for j in range(k):
        rows[k - 1][j] = -p.coefficients[j]
    return RatMatrix(rows)


def nullspace(a: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the kernel of a square matrix.

    Gaussian elimination to reduced row echelon form; pivots are the first
    nonzero entry per column, which keeps the output deterministic.  Returns
    an empty list when the matrix is nonsingular.
    """
    n = a.require_square()
    m = [list(row) for row in a.rows]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        m[row] = [e * inv for e in m[row]]
        for r in range(n):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [e - f * p for e, p in zip(m[r], m[row])]
        pivot_cols.append(col)
        row += 1
        if row == n:
            break
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, c in enumerate(pivot_cols):
            v[c] = -m[r][free]
        basis.append(tuple(v))
    return basis


def similar_to_unit_sums(a: RatMatrix) -> bool:
    """Decide whether a matrix with eigenvalue 1 is similar to a matrix whose
    rows and columns all sum to 1.

    The criterion is that the left and right eigenspaces for the eigenvalue 1
    are not orthogonal: some pair of basis vectors has nonzero inner product.
    Requires 1 to be an eigenvalue (exactly); rescale beforehand otherwise.
    """
    n = a.require_square()
    if charpoly(a)(1) != 0:
        raise PreconditionError("1 must be an eigenvalue of the matrix")
    ident = RatMatrix.identity(n)
    right = nullspace(a - ident)
    left = nullspace(a.transpose() - ident)
    return any(
        sum(x * y for x, y in zip(lv, rv)) != 0 for lv in left for rv in right
    )
