"""Exact Toeplitz-operator calculus on the Bergman space for polynomial biharmonic symbols."""

from .calculus import (
    BandedOperator,
    PiecewiseBandCoeff,
    band_from_term,
    commutator,
    op_compose,
    op_is_zero,
    op_linear,
    toeplitz,
    truncate_matrix,
)
from .decide import (
    CommuteVerdict,
    Line,
    NormalVerdict,
    coefficient_relations_check,
    decide_commute,
    decide_normal,
    degree_match_check,
)
from .errors import (
    EmptySymbol,
    HypothesesNotMet,
    InternalInconsistency,
    MismatchReport,
    NotInClass,
    ParseError,
    PoleAtPoint,
    ToeplitzError,
    ZeroCoefficient,
)
from .mellin import RadialPoly, band_coeff_via_mellin, mellin_hat
from .numeric import GaussRational, RationalFunc, UniPoly, parse_gauss
from .oracle import DenseMatrix, consistency_check, oracle_matrix
from .symbol import (
    BiharmonicSymbol,
    QuasiHomogeneousTerm,
    affine_relation,
    conjugate_symbol,
    load_symbol,
    nondegeneracy_report,
    parse_symbol,
    render_symbol,
    symbol_eval,
    symbol_from_json,
    symbol_to_json,
    symbol_to_terms,
)

__version__ = "0.1.0"
