"""
Statistics over the zeros of L(s, f).
"""

from .base import MomentReport, ValueDistribution, ordered_sum, reports_to_frame
from .checkers import (discrete_mean_check, dirichlet_bound_check, landau_gonek_check,
                       mv_meanvalue_check, prime_poly_moment_check, random_unit_coefficients)
from .discrete import (derivative_moment, shifted_moment, shifted_moment_grid,
                       simple_zero_pipeline, value_distribution)
from .second_moment import second_moment_decomposition, second_moment_whole_range
