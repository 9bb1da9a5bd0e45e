"""khabcheck: machine verification of the integral-inequality reduction
behind Khabibullin's conjecture.

The package provides exact rational polynomial machinery, a symbolic term
algebra closed under differentiation, certified positivity decisions, and
adaptive quadrature drivers that confront every integral identity of the
reduction with its analytic target.
"""

__version__ = "0.1.0"

from .exact import ALPHA, AlphaPolynomial, Rational, Z, ZPolynomial, rational
from .termalgebra import MixedSum, MixedTerm, mixed_diff, mixed_eval
from .kernel import kernel_derivative, kernel_eval, kernel_recurrence_check
from .constants import (
    RhsConstant,
    beta_int,
    extremal_density,
    kernel_power_moment,
    rhs_constant,
    verify_moment_identity,
    verify_reciprocity,
)
from .transition import (
    AsymptoticReport,
    OracleAgreement,
    PhiFamily,
    asymptotic_check,
    log_weight,
    log_weight_derivatives,
    oracle_equiv_check,
    transition_eval,
    transition_evaluator,
    transition_oracle,
    transition_poly,
    transition_via_base_derivatives,
)
from .positivity import (
    PositivityVerdict,
    QuadraticCoeffs,
    ScanReport,
    Status,
    alpha_threshold,
    poly_nonneg_on_pos,
    quad_nonneg,
    region_scan,
)
from .quadrature import (
    ChainReport,
    DensityFunction,
    QuadConfig,
    QuadResult,
    extremal_density_fn,
    integrate_01_kernel,
    integrate_log_moment,
    integrate_weight_prime_moment,
    khabibullin_transform,
    verify_conjecture_chain,
    verify_reconstruction,
    verify_weighted_moment,
)

__all__ = [
    "__version__",
    "ALPHA", "AlphaPolynomial", "Rational", "Z", "ZPolynomial", "rational",
    "MixedSum", "MixedTerm", "mixed_diff", "mixed_eval",
    "kernel_derivative", "kernel_eval", "kernel_recurrence_check",
    "RhsConstant", "beta_int", "extremal_density", "kernel_power_moment",
    "rhs_constant", "verify_moment_identity", "verify_reciprocity",
    "AsymptoticReport", "OracleAgreement", "PhiFamily", "asymptotic_check",
    "log_weight", "log_weight_derivatives", "oracle_equiv_check",
    "transition_eval", "transition_evaluator", "transition_oracle",
    "transition_poly", "transition_via_base_derivatives",
    "PositivityVerdict", "QuadraticCoeffs", "ScanReport", "Status",
    "alpha_threshold", "poly_nonneg_on_pos", "quad_nonneg", "region_scan",
    "ChainReport", "DensityFunction", "QuadConfig", "QuadResult",
    "extremal_density_fn", "integrate_01_kernel", "integrate_log_moment",
    "integrate_weight_prime_moment", "khabibullin_transform",
    "verify_conjecture_chain", "verify_reconstruction", "verify_weighted_moment",
]
