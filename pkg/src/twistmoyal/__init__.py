"""Twisted Moyal plane: exact star products, special functions and the oscillator spectrum."""

from .checks import CheckResult
from .polyalg import Polynomial2, parse_expression, render
from .starprod import DeformationParams, StarMode, star_product

__version__ = "0.1.0"

__all__ = ["CheckResult", "DeformationParams", "Polynomial2", "StarMode", "parse_expression", "render",
           "star_product", "__version__"]
