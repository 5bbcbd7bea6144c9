"""Exact piecewise-linear operations on boxes."""
from .expr import (Affine, Box, Compose, Const, Max, Min, Mul, Rational, Scale, Sum, Var,
                   evaluate, max_, min_)
from .certify import Equal, NotEqual, check_pl_model, pl_bounds, pl_equal, pl_range
from .sample import NoCounterexampleFound, SampleRefuted, SamplingPlan, sample_check
from .catalog import catalog, chebyshev
from .normal import normal_form

__all__ = [
    "Affine", "Box", "Compose", "Const", "Max", "Min", "Mul", "Rational", "Scale", "Sum", "Var",
    "evaluate", "max_", "min_", "Equal", "NotEqual", "check_pl_model", "pl_bounds", "pl_equal",
    "pl_range", "NoCounterexampleFound", "SampleRefuted", "SamplingPlan", "sample_check",
    "catalog", "chebyshev", "normal_form",
]
