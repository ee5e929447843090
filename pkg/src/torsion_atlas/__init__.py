"""Torsion of rational elliptic curves over the compositum of all D4
extensions of Q: exact arithmetic, the j-map catalog, and the classifier."""

from .catalog import (
    Catalog,
    JMapEntry,
    NonUniqueMaximum,
    TorsionStructure,
    builtin_catalog,
    p_primary,
    torsion_leq,
    torsion_max,
)
from .classifier import (
    ClassifierReport,
    InternalInconsistency,
    NeedsModel,
    classify_j,
    classify_model,
    consistency_audit,
)
from .weierstrass import (
    CurveInvariants,
    NoTwoTorsion,
    SingularModel,
    SquareClass,
    WeierstrassModel,
    curve_invariants,
    has_rational_two_torsion,
    quadratic_twist,
    two_isogeny_square_class,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog", "JMapEntry", "NonUniqueMaximum", "TorsionStructure",
    "builtin_catalog", "p_primary", "torsion_leq", "torsion_max",
    "ClassifierReport", "InternalInconsistency", "NeedsModel",
    "classify_j", "classify_model", "consistency_audit",
    "CurveInvariants", "NoTwoTorsion", "SingularModel", "SquareClass",
    "WeierstrassModel", "curve_invariants", "has_rational_two_torsion",
    "quadratic_twist", "two_isogeny_square_class",
    "__version__",
]
