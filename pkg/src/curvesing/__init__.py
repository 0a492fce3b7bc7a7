"""Exact Jacobian numbers and delta invariants of curve germs in characteristic p."""
from .errors import (
    CurvesingError,
    DegeneratePencilParameter,
    DepthExceeded,
    ExtensionRequired,
    NonReduced,
    NotAPthPower,
    NotStabilized,
    ParseError,
)
from .fields import FieldDesc, FieldElem, adjoin_pth_root, field_arith, frobenius, function_field, gf, make_field, pth_root
from .jets import INFINITE, ColengthResult, colength, local_dim_at_precision
from .points import PointSpec, translate_to_origin
from .poly import Poly, derivative, factor_univariate, gcd_bivariate, is_geometrically_reduced, multiplicity, parse_poly
from .invariants import (
    BlowupTree,
    BranchParam,
    CompleteIntersectionGerm,
    InvariantReport,
    PlaneGerm,
    delta_blowup,
    delta_branch,
    geometric_delta,
    invariants_of_pencil_member,
    jacobian_number,
    jacobian_number_at,
    jacobian_number_ci,
)
from .criteria import (
    SurfaceCurveSpec,
    Verdict,
    adjunction_verdict,
    normalization_smoothness_verdict,
    rigidity_verdict,
    tate_smoothness_verdict,
)
from .family import FamilySpec, SemicontinuityRecord, semicontinuity_scan

__version__ = "0.1.0"
