"""Special functions, quadrature and root finding. No physics lives here."""

from .quadrature import (
    DEFAULT_TOL,
    Finite,
    FullLine,
    QuadratureRule,
    SemiInfinite,
    Tolerance,
    gauss_legendre_rule,
    integrate,
)
from .roots import RootBracket, expand_bracket, find_root
from .special import (
    ERFI_MAX_ARG,
    dawson,
    erf,
    erfc,
    erfcx,
    erfi,
    erfi_scaled,
    whittaker_w_neg34,
)

__all__ = [
    "DEFAULT_TOL",
    "ERFI_MAX_ARG",
    "Finite",
    "FullLine",
    "QuadratureRule",
    "RootBracket",
    "SemiInfinite",
    "Tolerance",
    "dawson",
    "erf",
    "erfc",
    "erfcx",
    "erfi",
    "erfi_scaled",
    "expand_bracket",
    "find_root",
    "gauss_legendre_rule",
    "integrate",
    "whittaker_w_neg34",
]
