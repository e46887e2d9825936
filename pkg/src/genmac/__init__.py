"""Generalized Macdonald polynomials from graded Lie algebra data.

The package computes constant-term pairings attached to graded Lie
(super)algebras, orthogonalizes orbit sums into Macdonald-type
polynomials, and cross-checks the results against exact
Chevalley-Eilenberg cohomology of finite truncations.
"""

__version__ = "0.1.0"

from .charring import CharElement, monomial_sym, schur_char
from .kernels import BACKEND
from .liedata import (CoefficientSpec, GradedLieData, classical_data, current_algebra_data,
                      t3_data)
from .macdonald import macdonald_norm, macdonald_polynomial, verify_bgg, verify_norm_product
from .pairing import macdonald_qt_pair, pair
from .rootsys import RootSystem, build_root_system, parse_root_system
from .series import INF, SeriesQT

__all__ = [
    "BACKEND", "CharElement", "CoefficientSpec", "GradedLieData", "INF", "RootSystem", "SeriesQT",
    "build_root_system", "classical_data", "current_algebra_data", "macdonald_norm",
    "macdonald_polynomial", "macdonald_qt_pair", "monomial_sym", "pair", "parse_root_system",
    "schur_char", "t3_data", "verify_bgg", "verify_norm_product",
]
