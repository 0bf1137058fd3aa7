"""Exact Wick-type star products on the complex hyperbolic disc.

The reduced algebra is stored in a fundamental basis f_{r,P,Q}; coefficients
are Gaussian rationals (fixed hbar) or rational functions of z = 1/(2 hbar)
(symbolic hbar).  See the README for a tour.
"""
from .ambient import AmbientPoly, GroupElement, LieElement, wick_star
from .charts import ChartPoint, eval_discpoly_at, point_from_matrix
from .disc import (
    DiscPoly,
    act_mobius,
    eval_disc,
    involution,
    moment_disc,
    mul_disc,
    poisson_disc,
    reduce,
    sigma_pullback,
    star,
    unreduce,
)
from .scalars import SYMBOLIC, QScalar, RationalFnZ

__version__ = "0.1.0"

__all__ = [
    "AmbientPoly", "GroupElement", "LieElement", "wick_star",
    "ChartPoint", "eval_discpoly_at", "point_from_matrix",
    "DiscPoly", "act_mobius", "eval_disc", "involution", "moment_disc", "mul_disc",
    "poisson_disc", "reduce", "sigma_pullback", "star", "unreduce",
    "SYMBOLIC", "QScalar", "RationalFnZ",
]
