"""Fixed-step RK4 integration of integral curves and geodesics, arc length
in the twisted metric, and the coordinate-projection length inequality."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .geometry import TwistedMetric, christoffels


class FlowDomainError(DomainError):
    """Evaluation left the domain mid-trajectory.

    ``last_index`` is the index of the last valid sample and ``partial`` the
    curve up to and including it.
    """

    def __init__(self, cause: DomainError, last_index: int, partial: "Curve"):
        self.last_index = last_index
        self.partial = partial
        super().__init__(f"{cause.reason}; last valid sample {last_index}",
                         cause.position, cause.point)


@dataclass
class Curve:
    """Samples at t = t0 + k*step. Velocities are present for geodesics only."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    step: float
    vx: np.ndarray | None = None
    vy: np.ndarray | None = None
    method: str = "rk4"
    error: str | None = field(default=None, compare=False)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if (self.vx is None) != (self.vy is None):
            raise ValueError("velocities must be given for both coordinates or neither")
        if self.vx is not None:
            self.vx = np.asarray(self.vx, dtype=float)
            self.vy = np.asarray(self.vy, dtype=float)
        n = len(self.t)
        if len(self.x) != n or len(self.y) != n:
            raise ValueError("sample arrays differ in length")
        if n > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("sample times must be strictly increasing")

    @classmethod
    def from_points(cls, points, step=1.0, t0=0.0):
        """Polyline with uniform parameter spacing ``step``."""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        t = t0 + step * np.arange(len(pts))
        return cls(t, pts[:, 0], pts[:, 1], step)

    @property
    def has_velocity(self):
        return self.vx is not None

    def __len__(self):
        return len(self.t)

    @property
    def points(self):
        return np.column_stack([self.x, self.y])

    @property
    def end(self):
        return (float(self.x[-1]), float(self.y[-1]))


def _rk4(rhs, state0, h, n):
    """Classical RK4 with compensated accumulation of each state component.

    Returns the list of states; on a DomainError the error is re-raised with
    the states computed so far attached as ``exc.states``.
    """
    states = [tuple(float(s) for s in state0)]
    state = list(states[0])
    comp = [0.0] * len(state)
    for k in range(n):
        try:
            k1 = rhs(state)
            k2 = rhs([s + 0.5 * h * d for s, d in zip(state, k1)])
            k3 = rhs([s + 0.5 * h * d for s, d in zip(state, k2)])
            k4 = rhs([s + h * d for s, d in zip(state, k3)])
        except DomainError as exc:
            exc.states = states
            raise
        for i in range(len(state)):
            inc = h * ((k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0) - comp[i]
            new = state[i] + inc
            comp[i] = (new - state[i]) - inc
            state[i] = new
        if not all(math.isfinite(s) for s in state):
            exc = DomainError("trajectory diverged to a non-finite state", point=states[-1][:2])
            exc.states = states
            raise exc
        states.append(tuple(state))
    return states


def _check_steps(h, n):
    if not h > 0:
        raise ValueError(f"step must be positive, got {h!r}")
    if n < 1:
        raise ValueError(f"number of steps must be at least 1, got {n!r}")


def _to_curve(states, h, with_velocity):
    arr = np.asarray(states, dtype=float)
    t = h * np.arange(len(arr))
    if with_velocity:
        return Curve(t, arr[:, 0], arr[:, 1], h, arr[:, 2], arr[:, 3])
    return Curve(t, arr[:, 0], arr[:, 1], h)


def _run(rhs, state0, h, n, with_velocity):
    try:
        states = _rk4(rhs, state0, h, n)
    except DomainError as exc:
        done = exc.states
        raise FlowDomainError(exc, len(done) - 1, _to_curve(done, h, with_velocity)) from None
    return _to_curve(states, h, with_velocity)


def flow_integral_curve(m: TwistedMetric, F, p0, h: float, n: int) -> Curve:
    """Integral curve of the field ``F`` through ``p0``: n RK4 steps of size h.

    ``m`` is unused by the ODE itself but fixes the geometry the field lives
    in (built-in fields carry their own reference to it).
    """
    _check_steps(h, n)

    def rhs(s):
        return F.at((s[0], s[1]))

    return _run(rhs, p0, h, n, with_velocity=False)


def geodesic_rhs(m: TwistedMetric):
    def rhs(s):
        x, y, vx, vy = s
        G = christoffels(m, (x, y))
        return (
            vx,
            vy,
            -(G.Gxx_x * vx * vx + 2.0 * G.Gxy_x * vx * vy + G.Gyy_x * vy * vy),
            -(G.Gxx_y * vx * vx + 2.0 * G.Gxy_y * vx * vy + G.Gyy_y * vy * vy),
        )
    return rhs


def integrate_geodesic(m: TwistedMetric, p0, v0, h: float, n: int) -> Curve:
    _check_steps(h, n)
    state0 = (p0[0], p0[1], v0[0], v0[1])
    return _run(geodesic_rhs(m), state0, h, n, with_velocity=True)


def speed_squared(m: TwistedMetric, c: Curve) -> np.ndarray:
    """<γ', γ'> at every sample of a curve that carries velocities."""
    out = np.empty(len(c))
    for i in range(len(c)):
        f, g = m.values((c.x[i], c.y[i]))
        out[i] = f * f * c.vx[i] ** 2 + g * g * c.vy[i] ** 2
    return out


def _velocities(c: Curve):
    if c.has_velocity:
        return c.vx, c.vy
    return np.gradient(c.x, c.t, edge_order=1), np.gradient(c.y, c.t, edge_order=1)


def _quadrature(values, t):
    """Composite Simpson for an odd number of uniform samples, else trapezoid."""
    n = len(values)
    if n < 2:
        raise ValueError("need at least two samples")
    h = (t[-1] - t[0]) / (n - 1)
    if n % 2 == 1 and n >= 3:
        return h / 3.0 * (values[0] + values[-1]
                          + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum())
    return h * (values.sum() - 0.5 * (values[0] + values[-1]))


def _speeds(m, c, vx, vy, require_at_least_one=False):
    out = np.empty(len(c))
    for i in range(len(c)):
        p = (float(c.x[i]), float(c.y[i]))
        f, g = m.values(p)
        if require_at_least_one and (f < 1.0 or g < 1.0):
            raise DomainError(f"twisting functions must be >= 1 (f = {f!r}, g = {g!r}) "
                              f"at sample {i}", point=p)
        out[i] = math.sqrt(f * f * vx[i] ** 2 + g * g * vy[i] ** 2)
    return out


def arc_length(m: TwistedMetric, c: Curve) -> float:
    """Length of ``c`` in the twisted metric.

    Velocities come from the curve when present, otherwise from central
    differences (one-sided at the ends).
    """
    if len(c) < 2:
        raise ValueError("arc length needs at least two samples")
    vx, vy = _velocities(c)
    return float(_quadrature(_speeds(m, c, vx, vy), c.t))


@dataclass(frozen=True)
class ProjectionCheck:
    L: float  # twisted length of the curve
    Lx: float  # Euclidean length of the x-projection
    Ly: float  # Euclidean length of the y-projection
    holds: bool


def projection_inequality_check(m: TwistedMetric, c: Curve) -> ProjectionCheck:
    """Compare the twisted length with the lengths of both coordinate shadows.

    When f, g >= 1 along the curve neither shadow can be longer than the
    curve itself; samples violating f, g >= 1 raise DomainError.
    """
    if len(c) < 2:
        raise ValueError("need at least two samples")
    vx, vy = _velocities(c)
    L = float(_quadrature(_speeds(m, c, vx, vy, require_at_least_one=True), c.t))
    Lx = float(_quadrature(np.abs(vx), c.t))
    Ly = float(_quadrature(np.abs(vy), c.t))
    eps = 1e-9 * (1.0 + L)
    return ProjectionCheck(L, Lx, Ly, L >= Lx - eps and L >= Ly - eps)


def trace_leaves(m: TwistedMetric, F, seeds, h: float, n: int) -> list[Curve]:
    """Integral curves of ``F`` through each seed, n steps backward and forward.

    Each leaf is parametrized on [-n h, n h] with the seed at t = 0. A seed
    whose trajectory leaves the domain yields the valid portion with
    ``Curve.error`` set; the other seeds are unaffected.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    _check_steps(h, n)
    return [_leaf(m, F, s, h, n) for s in seeds]


def _leaf(m, F, seed, h, n):
    errors = []

    def half(field):
        try:
            return flow_integral_curve(m, field, seed, h, n)
        except FlowDomainError as exc:
            errors.append(str(exc))
            return exc.partial

    back = half(F.negated())
    fwd = half(F)
    x = np.concatenate([back.x[:0:-1], fwd.x])
    y = np.concatenate([back.y[:0:-1], fwd.y])
    t = np.concatenate([-back.t[:0:-1], fwd.t])
    return Curve(t, x, y, h, error="; ".join(errors) or None)
