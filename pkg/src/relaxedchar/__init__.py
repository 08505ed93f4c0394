"""Exact characters of relaxed modules over affine sl_{l+1} and of minimal W-algebra modules."""

from .cartan import (
    AffineRoot,
    AffineWeight,
    FiniteRoot,
    FiniteWeight,
    RootSystemA,
    finite_weight,
    parse_weight_literal,
    sugawara_weight,
)
from .characters import (
    central,
    conformal_weights,
    main_identity_check,
    relaxed_simple_character,
    relaxed_verma_character,
    w_ordinary_character,
)
from .kl import parabolic_coefficients, simple_in_verma
from .qseries import QSeries

__all__ = [
    "AffineRoot",
    "AffineWeight",
    "FiniteRoot",
    "FiniteWeight",
    "QSeries",
    "RootSystemA",
    "central",
    "conformal_weights",
    "finite_weight",
    "main_identity_check",
    "parabolic_coefficients",
    "parse_weight_literal",
    "relaxed_simple_character",
    "relaxed_verma_character",
    "simple_in_verma",
    "sugawara_weight",
    "w_ordinary_character",
]

__version__ = "0.1.0"
