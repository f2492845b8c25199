"""Gamma_2 and log-Sobolev ratios of symmetric functions on spheres."""

from .bounds import (
    bakry_emery_lower,
    bound_report,
    cd_lambda_lower,
    lambda_d,
    lambda_lower,
    lichnerowicz_lower,
    minimize_upper,
    rothaus_lower,
    upper_alpha_expr,
    upper_U,
)
from .exceptions import PositivityError, QuadratureError, ResolutionError, UndefinedRatioError
from .families import make_quartic, quartic, random_symmetric, sample_random_symmetric
from .functionals import (
    entropy,
    entropy_deficit,
    fisher_information,
    functional_report,
    gamma2_functional,
    gamma2_ratio,
    log_sobolev_ratio,
    mass,
    poincare_ratio,
)
from .quadrature import gauss_z_rule, product_sphere_rule

__version__ = "0.1.0"
