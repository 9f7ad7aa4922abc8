"""Vector fields on the twisted plane, the geodesic-field test and the
totally-geodesic foliation criterion."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._grid import check_region, grid_points
from .errors import DomainError
from .expr import as_field, eval_jet2
from .geometry import (
    TangentVector,
    TwistedMetric,
    _covariant,
    christoffel_jets,
    covariant_derivative,
    divergence,
    metric_inner,
    ricci_direction,
)
from .jets import Jet2

SQRT2 = math.sqrt(2.0)
FD_STEP = 1e-5


class VectorField:
    """Base class: a field a ∂x + b ∂y.

    Subclasses implement :meth:`at`; those that can produce exact second-order
    component jets also implement :meth:`jet2`. Without it, first partials
    fall back to central differences with step ``FD_STEP``.
    """

    def at(self, p):
        raise NotImplementedError

    def jet2(self, p):
        """Pair of :class:`Jet2` for (a, b), or None when not available."""
        return None

    @property
    def exact(self):
        return type(self).jet2 is not VectorField.jet2

    def jet1(self, p):
        """(a, a_x, a_y, b, b_x, b_y) at ``p``."""
        jets = self.jet2(p)
        if jets is not None:
            A, B = jets
            return (A.v, A.dx, A.dy, B.v, B.dx, B.dy)
        x, y = p
        h = FD_STEP
        a, b = self.at(p)
        axp, bxp = self.at((x + h, y))
        axm, bxm = self.at((x - h, y))
        ayp, byp = self.at((x, y + h))
        aym, bym = self.at((x, y - h))
        return (a, (axp - axm) / (2 * h), (ayp - aym) / (2 * h),
                b, (bxp - bxm) / (2 * h), (byp - bym) / (2 * h))

    def __call__(self, x, y):
        return self.at((x, y))

    def negated(self):
        return _Negated(self)


class ExprField(VectorField):
    """Field whose components are expressions in x and y."""

    def __init__(self, a, b):
        self.a = as_field(a)
        self.b = as_field(b)

    def __repr__(self):
        return f"ExprField({str(self.a)!r}, {str(self.b)!r})"

    def at(self, p):
        A, B = self.jet2(p)
        return (A.v, B.v)

    def jet2(self, p):
        try:
            return eval_jet2(self.a, *p), eval_jet2(self.b, *p)
        except DomainError as exc:
            raise exc.at(p) from None


class CallableField(VectorField):
    """Field backed by a plain function ``(x, y) -> (a, b)``; partials by differences."""

    def __init__(self, func):
        self.func = func

    def at(self, p):
        a, b = self.func(*p)
        return (float(a), float(b))


class CanonicalField(VectorField):
    """U = (1/(√2 f)) ∂x + (1/(√2 g)) ∂y, unit in the twisted metric."""

    def __init__(self, m):
        self.metric = m

    def at(self, p):
        f, g = self.metric.values(p)
        return (1.0 / (SQRT2 * f), 1.0 / (SQRT2 * g))

    def jet2(self, p):
        F, G = self.metric.jets(p)
        return Jet2(1.0) / (F * SQRT2), Jet2(1.0) / (G * SQRT2)


class OrthogonalField(VectorField):
    """Quarter turn of U in the orthonormal frame ∂x/f, ∂y/g: (-b g/f, a f/g)."""

    def __init__(self, m, base):
        self.metric = m
        self.base = base

    def at(self, p):
        f, g = self.metric.values(p)
        a, b = self.base.at(p)
        return (-b * g / f, a * f / g)

    def jet2(self, p):
        jets = self.base.jet2(p)
        if jets is None:
            return None
        A, B = jets
        F, G = self.metric.jets(p)
        return -B * G / F, A * F / G

    @property
    def exact(self):
        return self.base.exact


class _Negated(VectorField):
    def __init__(self, inner):
        self.inner = inner

    def at(self, p):
        a, b = self.inner.at(p)
        return (-a, -b)

    def jet2(self, p):
        jets = self.inner.jet2(p)
        return None if jets is None else (-jets[0], -jets[1])

    @property
    def exact(self):
        return self.inner.exact

    def negated(self):
        return self.inner


class CovariantField(VectorField):
    """The field ∇_V W.

    Its first partials are exact whenever both V and W supply 2-jets;
    otherwise they come from central differences of the pointwise values.
    """

    def __init__(self, m, V, W):
        self.metric = m
        self.V = V
        self.W = W

    def at(self, p):
        return tuple(covariant_derivative(self.metric, p, self.V, self.W))

    def jet1(self, p):
        if not (self.V.exact and self.W.exact):
            return super().jet1(p)
        F, G = self.metric.jets(p)
        Va, Vb = self.V.jet2(p)
        Wu, Ww = self.W.jet2(p)
        X, Y = _covariant(
            christoffel_jets(F, G),
            Va.truncate(), Vb.truncate(),
            Wu.truncate(), Wu.partial_x(), Wu.partial_y(),
            Ww.truncate(), Ww.partial_x(), Ww.partial_y(),
        )
        return (X.v, X.dx, X.dy, Y.v, Y.dx, Y.dy)


def canonical_unit_field(m: TwistedMetric) -> CanonicalField:
    return CanonicalField(m)


def orthogonal_unit_field(m: TwistedMetric, U: VectorField) -> OrthogonalField:
    return OrthogonalField(m, U)


def geodesic_residual(m: TwistedMetric, p, U: VectorField) -> TangentVector:
    """Both components of ∇_U U, written out in terms of f, g and U's partials."""
    F, G = m.jets(p)
    f, fx, fy = F.v, F.dx, F.dy
    g, gx, gy = G.v, G.dx, G.dy
    a, ax, ay, b, bx, by = U.jet1(p)
    first = (a * a * fx / f - b * b * gx * g / (f * f) + 2.0 * a * b * fy / f
             + a * ax + b * ay)
    second = (-a * a * f * fy / (g * g) + b * b * gy / g + 2.0 * a * b * gx / g
              + a * bx + b * by)
    return TangentVector(first, second)


def twist_mismatch(m: TwistedMetric, p) -> float:
    """f_y - g_x; the canonical field is geodesic exactly where this vanishes."""
    F, G = m.jets(p)
    return F.dy - G.dx


@dataclass(frozen=True)
class FieldCheckReport:
    region: tuple[float, float, float, float]
    grid: int
    tol: float
    sup_residual: float  # max twisted-metric norm of ∇_U U
    sup_unit_defect: float  # max |<U,U> - 1|
    worst_point: tuple[float, float]
    passed: bool


def _located(fn, p):
    try:
        return fn()
    except DomainError as exc:
        raise (exc if exc.point is not None else exc.at(p)) from None


def check_geodesic_field(m, U, region=(-1.0, 1.0, -1.0, 1.0), grid=21, tol=1e-9) -> FieldCheckReport:
    region = check_region(region)
    sup_res, sup_unit, worst = -1.0, 0.0, None
    for p in grid_points(region, grid):
        def sample():
            r = geodesic_residual(m, p, U)
            a, b = U.at(p)
            return math.sqrt(metric_inner(m, p, r, r)), abs(metric_inner(m, p, (a, b), (a, b)) - 1.0)
        res, unit = _located(sample, p)
        if res > sup_res:
            sup_res, worst = res, p
        sup_unit = max(sup_unit, unit)
    return FieldCheckReport(region, grid, tol, sup_res, sup_unit, worst,
                            sup_res <= tol and sup_unit <= tol)


@dataclass(frozen=True)
class GeodesyCriterion:
    ric: float
    div_term: float
    criterion: float  # ric - div_term; zero exactly for totally geodesic foliations


def total_geodesy_criterion(m: TwistedMetric, p, N: VectorField) -> GeodesyCriterion:
    """Ric(N) - div(∇_N N) for the foliation with unit normal N."""
    ric = ricci_direction(m, p, TangentVector(*N.at(p)))
    div_term = divergence(m, p, CovariantField(m, N, N))
    return GeodesyCriterion(ric, div_term, ric - div_term)


@dataclass(frozen=True)
class CriterionReport:
    region: tuple[float, float, float, float]
    grid: int
    tol: float
    sup_criterion: float
    sup_ric: float
    sup_div: float
    worst_point: tuple[float, float]
    passed: bool


def check_total_geodesy(m, N, region=(-1.0, 1.0, -1.0, 1.0), grid=21, tol=1e-9) -> CriterionReport:
    region = check_region(region)
    sup_c, sup_r, sup_d, worst = -1.0, 0.0, 0.0, None
    for p in grid_points(region, grid):
        crit = _located(lambda: total_geodesy_criterion(m, p, N), p)
        if abs(crit.criterion) > sup_c:
            sup_c, worst = abs(crit.criterion), p
        sup_r = max(sup_r, abs(crit.ric))
        sup_d = max(sup_d, abs(crit.div_term))
    return CriterionReport(region, grid, tol, sup_c, sup_r, sup_d, worst, sup_c <= tol)
