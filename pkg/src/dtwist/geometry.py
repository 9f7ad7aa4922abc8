"""Pointwise geometry of the plane with metric f^2 dx^2 + g^2 dy^2.

Curvature follows the convention R(X, Y)Z = ∇_Y ∇_X Z - ∇_X ∇_Y Z - ∇_[X,Y] Z,
under which <R(∂x, ∂y)∂x, ∂y> / (f^2 g^2) is the Gaussian curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .expr import ScalarField, as_field, eval_jet2


@dataclass(frozen=True)
class TangentVector:
    vx: float
    vy: float

    def __iter__(self):
        yield self.vx
        yield self.vy


@dataclass(frozen=True)
class Christoffels:
    """Coefficients of ∇_∂x ∂x, ∇_∂y ∂y and ∇_∂x ∂y (= ∇_∂y ∂x) in the ∂x, ∂y basis."""

    Gxx_x: float
    Gxx_y: float
    Gyy_x: float
    Gyy_y: float
    Gxy_x: float
    Gxy_y: float

    def as_tuple(self):
        return (self.Gxx_x, self.Gxx_y, self.Gyy_x, self.Gyy_y, self.Gxy_x, self.Gxy_y)


@dataclass(frozen=True)
class CurvaturePoint:
    """R(∂x,∂y)∂x = c ∂y, R(∂x,∂y)∂y = d ∂x, and ip = <R(∂x,∂y)∂x, ∂y> = g^2 c."""

    c: float
    d: float
    ip: float


@dataclass(frozen=True)
class TwistedMetric:
    """The metric <∂x,∂x> = f^2, <∂y,∂y> = g^2, <∂x,∂y> = 0 on the plane.

    ``f`` and ``g`` may be given as expression text; positivity is checked
    whenever the metric is evaluated.
    """

    f: ScalarField
    g: ScalarField

    def __init__(self, f, g):
        object.__setattr__(self, "f", as_field(f))
        object.__setattr__(self, "g", as_field(g))

    def jets(self, p):
        """2-jets of f and g at ``p``; raises DomainError unless both are positive."""
        x, y = p
        try:
            F = eval_jet2(self.f, x, y)
            G = eval_jet2(self.g, x, y)
        except DomainError as exc:
            raise exc.at(p) from None
        if F.v <= 0.0:
            raise DomainError(f"f <= 0 (f = {F.v!r})", point=p)
        if G.v <= 0.0:
            raise DomainError(f"g <= 0 (g = {G.v!r})", point=p)
        return F, G

    def values(self, p):
        F, G = self.jets(p)
        return F.v, G.v


def metric_inner(m: TwistedMetric, p, v, w) -> float:
    f, g = m.values(p)
    vx, vy = v
    wx, wy = w
    return f * f * vx * wx + g * g * vy * wy


def metric_norm(m: TwistedMetric, p, v) -> float:
    return math.sqrt(metric_inner(m, p, v, v))


def _gammas(f, fx, fy, g, gx, gy):
    # generic over floats and Jet1, so the same algebra yields derivatives
    return (
        fx / f,
        -f * fy / (g * g),
        -gx * g / (f * f),
        gy / g,
        fy / f,
        gx / g,
    )


def christoffels(m: TwistedMetric, p) -> Christoffels:
    F, G = m.jets(p)
    return Christoffels(*_gammas(F.v, F.dx, F.dy, G.v, G.dx, G.dy))


def christoffel_jets(F, G):
    """First-order jets of the six coefficients, from 2-jets of f and g."""
    return _gammas(F.truncate(), F.partial_x(), F.partial_y(),
                   G.truncate(), G.partial_x(), G.partial_y())


def curvature_from_jets(F, G) -> CurvaturePoint:
    f, fx, fy, fyy = F.v, F.dx, F.dy, F.dyy
    g, gx, gy, gxx = G.v, G.dx, G.dy, G.dxx
    f2, g2 = f * f, g * g
    # (f fy / g^2)_y and (gx / g)_x
    d_ffy_g2 = (fy * fy + f * fyy) / g2 - 2.0 * f * fy * gy / (g2 * g)
    d_gx_g = gxx / g - gx * gx / g2
    c = (fy * fy / g2 - gx * gx / g2 + fx * gx / (f * g) - f * fy * gy / (g2 * g)
         - d_ffy_g2 - d_gx_g)
    # (fy / f)_y and (g gx / f^2)_x
    d_fy_f = fyy / f - fy * fy / f2
    d_ggx_f2 = (gx * gx + g * gxx) / f2 - 2.0 * g * gx * fx / (f2 * f)
    d = (fy * fy / f2 - gx * gx / f2 + g * fx * gx / (f2 * f) - gy * fy / (f * g)
         + d_fy_f + d_ggx_f2)
    return CurvaturePoint(c, d, g2 * c)


def curvature(m: TwistedMetric, p) -> CurvaturePoint:
    return curvature_from_jets(*m.jets(p))


def sectional_curvature(m: TwistedMetric, p) -> float:
    F, G = m.jets(p)
    cp = curvature_from_jets(F, G)
    return cp.ip / (F.v * F.v * G.v * G.v)


def _covariant(gam, a, b, u, ux, uy, w, wx, wy):
    """Components of ∇_V W for V = a∂x + b∂y, W = u∂x + w∂y."""
    Gxx_x, Gxx_y, Gyy_x, Gyy_y, Gxy_x, Gxy_y = gam
    return (
        a * (u * Gxx_x + w * Gxy_x + ux) + b * (u * Gxy_x + w * Gyy_x + uy),
        a * (u * Gxx_y + w * Gxy_y + wx) + b * (u * Gxy_y + w * Gyy_y + wy),
    )


def covariant_derivative(m: TwistedMetric, p, V, W) -> TangentVector:
    """∇_V W at ``p``; V and W are vector fields (see :mod:`dtwist.fields`)."""
    gam = christoffels(m, p).as_tuple()
    a, b = V.at(p)
    u, ux, uy, w, wx, wy = W.jet1(p)
    return TangentVector(*_covariant(gam, a, b, u, ux, uy, w, wx, wy))


def _unit_check(m, p, N):
    n2 = metric_inner(m, p, N, N)
    if abs(n2 - 1.0) > 1e-9:
        raise ValueError(f"direction is not unit at {tuple(p)}: <N,N> = {n2!r}")


def ricci_direction(m: TwistedMetric, p, N) -> float:
    """Ric(N) = <R(e1, N)e1, N> with e1 the unit vector a quarter turn from N.

    The plane has a single tangent direction orthogonal to N, so no
    averaging factor appears.
    """
    _unit_check(m, p, N)
    F, G = m.jets(p)
    f, g = F.v, G.v
    cp = curvature_from_jets(F, G)
    r, s = N
    p1, q1 = -s * g / f, r * f / g
    return (p1 * s - q1 * r) * (p1 * cp.c * s * g * g + q1 * cp.d * r * f * f)


def divergence_from_jets(gam, a, ax, b, by) -> float:
    Gxx_x, _, _, Gyy_y, Gxy_x, Gxy_y = gam
    return ax + by + a * (Gxx_x + Gxy_y) + b * (Gxy_x + Gyy_y)


def divergence(m: TwistedMetric, p, V) -> float:
    """Trace of ∇V over the orthonormal frame ∂x/f, ∂y/g."""
    gam = christoffels(m, p).as_tuple()
    a, ax, _, b, _, by = V.jet1(p)
    return divergence_from_jets(gam, a, ax, b, by)
