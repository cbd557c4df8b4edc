"""Constructive integer-coefficient approximation on [0,1] via the
lattice generated by the scaled Bernstein basis."""

from .analysis import (
    ErrorReport,
    PowerBasisPoly,
    analyze,
    bernstein_error,
    bound_main,
    bound_simple,
    brute_force_best,
    monomial_membership_check,
    snt_check,
    sup_error,
    to_power_basis,
)
from .basis import (
    basis_row,
    bernstein_values,
    difference_identity_residual,
    eval_basis,
    eval_lattice_poly,
    moment_residuals,
)
from .expr import compile_function, eval_expr, parse, to_string
from .funcs import (
    EmpiricalModulus,
    FunctionSpec,
    HoelderModulus,
    LipschitzModulus,
    TableModulus,
    certify,
    modulus,
    sample_uniform,
)
from .quantizer import (
    CoefficientVector,
    LatticeApproximant,
    QuantizationTrace,
    bernstein_coefficients,
    choose_t,
    epsilon,
    perturbed_coefficients,
    quantize,
    quantize_function,
    rho,
    theta_exponent,
)

__all__ = [
    "ErrorReport",
    "PowerBasisPoly",
    "analyze",
    "bernstein_error",
    "bound_main",
    "bound_simple",
    "brute_force_best",
    "monomial_membership_check",
    "snt_check",
    "sup_error",
    "to_power_basis",
    "basis_row",
    "bernstein_values",
    "difference_identity_residual",
    "eval_basis",
    "eval_lattice_poly",
    "moment_residuals",
    "compile_function",
    "eval_expr",
    "parse",
    "to_string",
    "EmpiricalModulus",
    "FunctionSpec",
    "HoelderModulus",
    "LipschitzModulus",
    "TableModulus",
    "certify",
    "modulus",
    "sample_uniform",
    "CoefficientVector",
    "LatticeApproximant",
    "QuantizationTrace",
    "bernstein_coefficients",
    "choose_t",
    "epsilon",
    "perturbed_coefficients",
    "quantize",
    "quantize_function",
    "rho",
    "theta_exponent",
]

__version__ = "0.1.0"
