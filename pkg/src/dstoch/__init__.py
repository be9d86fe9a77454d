"""Exact rational constructions for stochastic and doubly stochastic spectra.

The exact half works over arbitrary-precision rationals: classification of
row/column-sum structure, characteristic polynomials, rank-r spectrum
perturbations, the column-balancing family with its nonnegativity threshold,
and the Frobenius projection onto unit row/column sums.  The floating half
realizes conjugate-closed spectra through orthogonal embeddings of companion
matrices and normalizes nonnegative matrices to constant row sums.
"""

from .balance import (
    BalanceReport,
    balance,
    balance_minimal,
    balance_nr,
    balance_offsets,
    epsilon_threshold,
    normalize_to_stochastic,
)
from .core import (
    FloatMatrix,
    RatMatrix,
    StochClass,
    Stochasticity,
    classify,
    column_stats,
    format_float_matrix,
    format_matrix,
    frobenius_distance_sq,
    parse_float_matrix,
    parse_matrix,
    parse_scalar,
    uniform_matrix,
)
from .errors import (
    BasisError,
    ConjugacyError,
    DimensionError,
    DstochError,
    FormatError,
    InfeasibleError,
    MembershipError,
    NormalizationError,
    PerronWarning,
    PreconditionError,
)
from .nearness import (
    ColumnSlack,
    DsConditionReport,
    cospectral_ds,
    ds_condition,
    nearest_ds,
    nearest_ds_distance_sq,
)
from .orthogonal import (
    BasisSource,
    OrthoBasis,
    canonical_basis,
    embed,
    extract,
    random_basis,
    realize_cospectral,
    realize_nonneg,
    user_basis,
)
from .rado import RadoUpdate, rado_update, shift, shift_nonneg_threshold
from .spectra import (
    Poly,
    SpectrumList,
    charpoly,
    charpoly_float,
    companion,
    cospectral,
    format_poly,
    nullspace,
    parse_spectrum,
    poly_from_spectrum,
    similar_to_unit_sums,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
