"""
Analytic evaluation of L(s, f), its derivatives and the approximate
functional equation.
"""

from .context import ConvergenceError, EvalContext
from .gamma import psi_f, psi_log_derivative
from .engine import evaluate_L, evaluate_L_prime, split_sums
from .hardy import main_term_count, s_f, theta_f, z_function
from .afe import PointEval, afe_L_prime, contour_tail_estimate, smoothed_L
from .cauchy import cauchy_derivative, derivative_via_cauchy
from .logbound import MU_0, PrimeInequality, prime_inequality
