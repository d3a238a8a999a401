"""Exact evaluation of terminating hypergeometric series and mechanical
certification of balanced-series vanishing identities."""

from .errors import (
    DegreeTooHigh,
    DivisionByZeroPoly,
    DuplicateAbscissa,
    HypervanishError,
    MissingBinding,
    NoTermination,
    NotBalanced,
    NotIntegerDifference,
    PairingNotFound,
    ParseError,
    PoleError,
    ProofReplayError,
    UndeclaredSymbol,
)
from .poly import (
    KPolyRat,
    LinForm,
    Poly,
    Rat,
    SymbolTable,
    as_rat,
    exact_divide,
    format_rat,
    interpolate,
    sym,
)
from .prover import (
    Certificate,
    CheckResult,
    check_certificate,
    find_pairing,
    prove_vanishing,
)
from .rising import alt_binom_sum, pascal_row, poch_ratio_poly, rf_num, rf_sym
from .series import (
    HypSeries,
    evaluate_terminating,
    is_balanced,
    termination_index,
)
from .specparse import (
    SeriesSpec,
    format_linform,
    format_series_spec,
    parse_linform,
    parse_rational,
    parse_series_spec,
)

__version__ = "1.0.0"

__all__ = [
    "Certificate",
    "CheckResult",
    "DegreeTooHigh",
    "DivisionByZeroPoly",
    "DuplicateAbscissa",
    "HypSeries",
    "HypervanishError",
    "KPolyRat",
    "LinForm",
    "MissingBinding",
    "NoTermination",
    "NotBalanced",
    "NotIntegerDifference",
    "PairingNotFound",
    "ParseError",
    "PoleError",
    "Poly",
    "ProofReplayError",
    "Rat",
    "SeriesSpec",
    "SymbolTable",
    "UndeclaredSymbol",
    "alt_binom_sum",
    "as_rat",
    "check_certificate",
    "evaluate_terminating",
    "exact_divide",
    "find_pairing",
    "format_linform",
    "format_rat",
    "format_series_spec",
    "interpolate",
    "is_balanced",
    "parse_linform",
    "parse_rational",
    "parse_series_spec",
    "pascal_row",
    "poch_ratio_poly",
    "prove_vanishing",
    "rf_num",
    "rf_sym",
    "sym",
    "termination_index",
]
