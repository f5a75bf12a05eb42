"""Exact iterative differential algebra over function fields of characteristic p.

The package implements truncated iterative (Hasse-Schmidt) derivations on
monomial function fields GF(q)(t, t^alpha) with a p-adic exponent alpha,
subfield and p-th-root towers, iterative differential equations with
fundamental solution matrices, unique derivation extensions to finite
separable extensions, and desk-scale Galois group scheme computations for
the diagonalizable and constant factors.  All arithmetic is exact.
"""

from .fq import Fq, get_field
from .padic import (DigitOracle, ExplicitOracle, OnesOracle, PadicExponent,
                    PrecisionError, ShiftedOracle, SquaresOracle,
                    combine_exponents, digits, looks_eventually_periodic,
                    lucas_binom, oracle_from_spec)
from .field import (ExponentLattice, FieldCtx, MonoElem, arith, format_element,
                    is_constant, lattice_index, make_field, p_root)
from .derivation import (AxiomReport, TruncSeries, series_invert, theta_series,
                         verify_additivity, verify_homomorphism,
                         verify_iterativity)

__version__ = "0.1.0"

__all__ = [
    "Fq", "get_field",
    "DigitOracle", "SquaresOracle", "OnesOracle", "ExplicitOracle",
    "ShiftedOracle", "PadicExponent", "PrecisionError", "combine_exponents",
    "digits", "lucas_binom", "looks_eventually_periodic", "oracle_from_spec",
    "ExponentLattice", "FieldCtx", "MonoElem", "arith", "format_element",
    "is_constant", "lattice_index", "make_field", "p_root",
    "AxiomReport", "TruncSeries", "series_invert", "theta_series",
    "verify_additivity", "verify_homomorphism", "verify_iterativity",
    "__version__",
]
