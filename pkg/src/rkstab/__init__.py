"""Stability-radius bounds and optimal stability polynomials for explicit
Runge-Kutta methods: polar-form bound calculators, moment-based Gaussian
quadrature, convex-feasibility optimal solvers, and figure/table tooling."""

__version__ = "0.1.0"

from .poly_core import BernsteinForm, Interval, Poly, from_bernstein, to_bernstein
from .polar import Blossom, elementary_symmetric
from .special import (
    chebyshev_blossom_tail,
    chebyshev_shifted,
    g_poly,
    generalized_binomial,
    laguerre_neg,
    laguerre_neg_poly,
    laguerre_smallest_zero,
    pochhammer,
    r_poly,
)
from .roots import NoRootFound, NoSignChange, RootResult, mu_bound, smallest_negative_root, unique_negative_root
from .quadrature import QuadRule, DegenerateMoments, gauss_rule, lambda_max, moments
from .bounds import (
    BoundReport,
    absolute_upper,
    closed_form_optimal,
    damped_parabolic_upper,
    first_order_segment_optimal,
    guillou_lago_damped,
    parabolic_limit_cap,
    parabolic_lower,
    parabolic_upper,
    stage_inequality,
    threshold_upper_lower,
)
from .optimal import (
    FeasibilityProblem,
    OptimalResult,
    SolverStall,
    feasible,
    optimal_radius,
    threshold_factor,
    touch_points,
)
from .region import RegionRaster, Window, auto_window, control_polygon, rasterize

__all__ = [
    "__version__",
    "Poly", "Interval", "BernsteinForm", "to_bernstein", "from_bernstein",
    "Blossom", "elementary_symmetric",
    "pochhammer", "generalized_binomial", "laguerre_neg", "laguerre_neg_poly",
    "g_poly", "r_poly", "chebyshev_shifted", "chebyshev_blossom_tail",
    "laguerre_smallest_zero",
    "RootResult", "NoSignChange", "NoRootFound",
    "unique_negative_root", "mu_bound", "smallest_negative_root",
    "QuadRule", "DegenerateMoments", "moments", "gauss_rule", "lambda_max",
    "BoundReport", "absolute_upper", "parabolic_upper", "parabolic_lower",
    "parabolic_limit_cap", "stage_inequality", "damped_parabolic_upper",
    "closed_form_optimal", "threshold_upper_lower",
    "first_order_segment_optimal", "guillou_lago_damped",
    "FeasibilityProblem", "OptimalResult", "SolverStall",
    "feasible", "optimal_radius", "touch_points", "threshold_factor",
    "RegionRaster", "Window", "auto_window", "rasterize", "control_polygon",
]
