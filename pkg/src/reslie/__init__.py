"""Exact cohomology of restricted Lie superalgebras over F_p, p > 2."""

from .families import heisenberg_even, heisenberg_odd
from .rescohomology import h1_res, h2_res, sixterm_verify
from .restricted import POperator, p_power
from .superalgebra import LieSuperalgebra

__all__ = [
    "LieSuperalgebra",
    "POperator",
    "p_power",
    "h1_res",
    "h2_res",
    "sixterm_verify",
    "heisenberg_even",
    "heisenberg_odd",
]
__version__ = "0.1.0"
