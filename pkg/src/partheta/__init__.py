"""High-precision tools for the partial theta function theta(q, x) = sum q^(j(j+1)/2) x^j."""
from .core import (DerivOrder, EvalResult, Parameter, decomposition_residual, de_residual,
                   evaluate, fe_residual, fourfold_residual, limit_function, phi, theta, xi)
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
