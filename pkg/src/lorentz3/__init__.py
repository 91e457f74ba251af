"""Lorentzian left-invariant metrics on three-dimensional unimodular Lie groups.

Structure constants and model algebras (``lie``), the bracket operator
``L`` and its normal forms (``milnor``), Levi-Civita connection and
curvature (``curvature``), curvature property detectors (``properties``),
the catalog of canonical metric families and the classifier (``catalog``),
and the command-line surface (``cli``).
"""

from .catalog import (
    FAMILIES,
    Classification,
    ClassificationError,
    DomainError,
    FamilyId,
    build_metric,
    classify_metric,
    design_grid,
    expected_curvature,
    verify_family,
    witness_check,
)
from .curvature import CurvatureData, constant_curvature, curvature, levi_civita
from .lie import (
    MODELS,
    GroupId,
    InvalidAlgebraError,
    InvalidMetricError,
    LieAlgebra3,
    identify_group,
    is_automorphism,
    killing_form,
    pullback_metric,
    validate_algebra,
)
from .linalg import Signature, sylvester_signature
from .milnor import ComplexPair, DiagonalReal, DoubleRoot, TripleRoot, canonical_frame, milnor_operator
from .properties import PropertyReport, property_report, ricci_soliton

__version__ = "0.1.0"

__all__ = [
    "FAMILIES", "Classification", "ClassificationError", "DomainError", "FamilyId", "build_metric",
    "classify_metric", "design_grid", "expected_curvature", "verify_family", "witness_check",
    "CurvatureData", "constant_curvature", "curvature", "levi_civita",
    "MODELS", "GroupId", "InvalidAlgebraError", "InvalidMetricError", "LieAlgebra3", "identify_group",
    "is_automorphism", "killing_form", "pullback_metric", "validate_algebra",
    "Signature", "sylvester_signature",
    "ComplexPair", "DiagonalReal", "DoubleRoot", "TripleRoot", "canonical_frame", "milnor_operator",
    "PropertyReport", "property_report", "ricci_soliton",
]
