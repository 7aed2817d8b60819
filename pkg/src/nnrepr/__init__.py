"""Nearest-neighbor representations of threshold functions.

Exact constructions (linear, exact, EQ, COMP, OMB threshold functions) and
an exhaustive verifier that checks an anchor set against a Boolean function
on every binary input using integer arithmetic only.
"""
from .anchors import AnchorSet, Label
from .arith import common_denominator_scale, format_rational, parse_rational, res_matrix, res_rational
from .boolfn import FunctionSpec, Kind, evaluate, truth_table
from .constructions import (
    construct_comp,
    construct_elt,
    construct_eq,
    construct_for,
    construct_lt,
    construct_omb,
    find_hyperplane_binary_point,
)
from .eqmatrix import EqMatrix, Verdict, builtin_matrix, load_matrix, validate_eq_matrix
from .errors import (
    DegenerateFunctionError,
    FormatError,
    InvalidInputError,
    NNReprError,
    ResourceLimitError,
    StructuralError,
)
from .separability import SeparabilityCertificate, is_linear_threshold
from .verifier import BACKEND, VerificationReport, nearest, verify, verify_parallel

__version__ = "0.1.0"

__all__ = [
    "AnchorSet", "BACKEND", "DegenerateFunctionError", "EqMatrix", "FormatError", "FunctionSpec",
    "InvalidInputError", "Kind", "Label", "NNReprError", "ResourceLimitError",
    "SeparabilityCertificate", "StructuralError", "Verdict", "VerificationReport",
    "builtin_matrix", "common_denominator_scale", "construct_comp", "construct_elt", "construct_eq",
    "construct_for", "construct_lt", "construct_omb", "evaluate", "find_hyperplane_binary_point",
    "format_rational", "is_linear_threshold", "load_matrix", "nearest", "parse_rational",
    "res_matrix", "res_rational", "truth_table", "validate_eq_matrix", "verify", "verify_parallel",
]
