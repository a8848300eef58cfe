"""Numerical checks of modular Hardy-Caccioppoli inequalities with variable exponents."""

from ._core import (
    ConfigError,
    DimensionError,
    DomainError,
    Error,
    EvalError,
    Scenario,
    SyntaxError,
    TestFunction,
    builtin,
    builtin_names,
    corollary_hypotheses,
    crucial_conditions,
    crucial_margin,
    custom_scenario,
    measures,
    plaplacian_general,
    plaplacian_radial,
    probe,
    run_cli,
    sample_test_functions,
    validate,
    verify,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "DomainError",
    "Error",
    "EvalError",
    "Scenario",
    "SyntaxError",
    "TestFunction",
    "builtin",
    "builtin_names",
    "corollary_hypotheses",
    "crucial_conditions",
    "crucial_margin",
    "custom_scenario",
    "measures",
    "plaplacian_general",
    "plaplacian_radial",
    "probe",
    "run_cli",
    "sample_test_functions",
    "validate",
    "verify",
]
