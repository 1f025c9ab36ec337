"""Systole, Mahler measure and complexity bounds for locally symmetric spaces, at desk scale."""
from .errors import ConvergenceError, DomainError, MahlerDisagreement
from .polynomials import IntPolynomial, is_cyclotomic_product, mahler_measure

__all__ = ["ConvergenceError", "DomainError", "IntPolynomial", "MahlerDisagreement",
           "is_cyclotomic_product", "mahler_measure"]
__version__ = "0.1.0"
