"""Exact symbolic powers, growth invariants and bound checks for monomial ideals."""

from symspread.errors import (
    CapExceeded,
    ConfigurationError,
    DimensionMismatch,
    ExponentOverflow,
    ParseError,
)
from symspread.monomial import (
    MonomialIdeal,
    Ring,
    colon,
    format_ideal,
    intersect,
    membership,
    minimalize,
    parse_ideal,
    power,
    product,
    radical,
    saturate,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "ConfigurationError",
    "DimensionMismatch",
    "ExponentOverflow",
    "MonomialIdeal",
    "ParseError",
    "Ring",
    "colon",
    "format_ideal",
    "intersect",
    "membership",
    "minimalize",
    "parse_ideal",
    "power",
    "product",
    "radical",
    "saturate",
]
