"""Fast spherical Gauss-Laguerre Fourier transforms for scattered data.

The basis functions are normalized products of generalized Laguerre
polynomials in r^2, powers of r, and spherical harmonics; they form an
orthonormal basis of L^2(R^3) with Gaussian weight exp(-r^2).  This package
evaluates band-limited expansions at arbitrary points in R^3 (forward),
applies the conjugate-transposed map (adjoint), and recovers coefficients
from scattered samples by conjugate-gradient iteration (inverse), all in
far fewer operations than the direct sums, which are also provided as
oracles.
"""

from .indexing import coeff_count, mu_to_nlm, nlm_to_mu
from .generate import gen_coeffs, gen_grid, gen_points_ball
from .nfft import ndft, ndft_adjoint, nfft_plan, nfft_execute, \
    nfft_adjoint_execute, nfft_error_bound
from .solvers import LinearOperatorPair, SolveReport, cgne, cgnr, invert, \
    midpoint_initial_guess, operator_from_plan
from .special import SglIndex, sgl_basis_eval
from .transform import SglPlan, adjoint, choose_rho, error_bound, \
    evaluate_direct, evaluate_direct_adjoint, forward, plan, transform_points

__all__ = [
    "SglIndex",
    "SglPlan",
    "LinearOperatorPair",
    "SolveReport",
    "adjoint",
    "cgne",
    "cgnr",
    "choose_rho",
    "coeff_count",
    "error_bound",
    "evaluate_direct",
    "evaluate_direct_adjoint",
    "forward",
    "gen_coeffs",
    "gen_grid",
    "gen_points_ball",
    "invert",
    "midpoint_initial_guess",
    "mu_to_nlm",
    "ndft",
    "ndft_adjoint",
    "nfft_adjoint_execute",
    "nfft_error_bound",
    "nfft_execute",
    "nfft_plan",
    "nlm_to_mu",
    "operator_from_plan",
    "plan",
    "sgl_basis_eval",
    "transform_points",
]

__version__ = "0.1.0"
