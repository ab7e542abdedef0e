"""Numerical kernels and verification suites for the elliptic quantum
group U_{q,p}(sl2-hat): theta brackets, terminating elliptic and basic
hypergeometric series, the elliptic dynamical R-matrix, evaluation modules
with exact dynamical-shift bookkeeping, elliptic Clebsch-Gordan
coefficients, and the degeneration chain down to classical q-series."""

from .errors import DomainError, EllqgError, NonTerminatingError, PoleError
from .params import ModularParams, UPoint

__version__ = "0.1.0"

__all__ = [
    "DomainError", "EllqgError", "NonTerminatingError", "PoleError",
    "ModularParams", "UPoint", "__version__",
]
