"""Exact computations with C2-equivariant characteristic classes over the rational Burnside ring."""

from .coeffs import AQ, QQ, BurnsideCoeff, X, Y
from .torus import TorusPolynomial, format_polynomial, parse_polynomial
from .groups import GroupAction, act, symmetrize, is_invariant, invariant_dimension
from .substitution import SubstitutionMap, substitute
from .symmetric import (GammaAlgebra, GeneratorPolynomial, Sym, decompose, expand, factor_for_dominant,
                        gamma_expand)

__version__ = "0.1.0"
