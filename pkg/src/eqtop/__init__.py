"""Equational theories: finite models, undemanding tests, interpretations,
exact piecewise-linear witnesses and metric-tree operations."""
from .terms import App, Equation, Interpretation, Signature, Theory, Var, app
from .dsl import format_theory, parse_document, parse_theory
from .algebra import FiniteAlgebra, satisfies, search_models
from .undemanding import is_k_undemanding, is_undemanding
from .interp import check_interpretation
from .kernels import BACKEND

__all__ = [
    "App", "Equation", "Interpretation", "Signature", "Theory", "Var", "app", "format_theory",
    "parse_document", "parse_theory", "FiniteAlgebra", "satisfies", "search_models",
    "is_k_undemanding", "is_undemanding", "check_interpretation", "BACKEND",
]
__version__ = "0.1.0"
