"""Geometry of the plane with metric f(x,y)^2 dx^2 + g(x,y)^2 dy^2."""

from .errors import DomainError, ExprSyntaxError, UnknownIdentifierError
from .expr import eval_jet2, eval_scalar, parse
from .fields import (
    ExprField,
    canonical_unit_field,
    check_geodesic_field,
    check_total_geodesy,
    orthogonal_unit_field,
    total_geodesy_criterion,
)
from .flow import arc_length, flow_integral_curve, integrate_geodesic, trace_leaves
from .geometry import TwistedMetric, christoffels, curvature, sectional_curvature

__all__ = [
    "DomainError", "ExprSyntaxError", "UnknownIdentifierError",
    "parse", "eval_scalar", "eval_jet2",
    "TwistedMetric", "christoffels", "curvature", "sectional_curvature",
    "ExprField", "canonical_unit_field", "orthogonal_unit_field",
    "check_geodesic_field", "total_geodesy_criterion", "check_total_geodesy",
    "flow_integral_curve", "integrate_geodesic", "arc_length", "trace_leaves",
]
