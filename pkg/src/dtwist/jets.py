"""Forward-mode jets in two variables.

A :class:`Jet2` carries a value with its first and second partials in x and
y; arithmetic on jets applies the Leibniz and chain rules to second order.
:class:`Jet1` is the first-order counterpart, used where only one derivative
survives (e.g. differentiating a quantity that already consumed one).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Jet1:
    v: float
    dx: float = 0.0
    dy: float = 0.0

    @classmethod
    def const(cls, c):
        return cls(float(c))

    def _lift(self, other):
        return other if isinstance(other, Jet1) else Jet1(float(other))

    def __add__(self, other):
        o = self._lift(other)
        return Jet1(self.v + o.v, self.dx + o.dx, self.dy + o.dy)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Jet1(self.v - o.v, self.dx - o.dx, self.dy - o.dy)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Jet1(-self.v, -self.dx, -self.dy)

    def __mul__(self, other):
        o = self._lift(other)
        return Jet1(self.v * o.v, self.dx * o.v + self.v * o.dx, self.dy * o.v + self.v * o.dy)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        q = self.v / o.v
        return Jet1(q, (self.dx - q * o.dx) / o.v, (self.dy - q * o.dy) / o.v)

    def __rtruediv__(self, other):
        return self._lift(other) / self


@dataclass(frozen=True)
class Jet2:
    """Value and partials up to order two; ``dxy`` is the single mixed partial."""

    v: float
    dx: float = 0.0
    dy: float = 0.0
    dxx: float = 0.0
    dxy: float = 0.0
    dyy: float = 0.0

    @classmethod
    def const(cls, c):
        return cls(float(c))

    @classmethod
    def var_x(cls, x):
        return cls(float(x), 1.0)

    @classmethod
    def var_y(cls, y):
        return cls(float(y), 0.0, 1.0)

    def as_tuple(self):
        return (self.v, self.dx, self.dy, self.dxx, self.dxy, self.dyy)

    def truncate(self):
        """Drop the second-order part."""
        return Jet1(self.v, self.dx, self.dy)

    def partial_x(self):
        """First-order jet of the x-partial."""
        return Jet1(self.dx, self.dxx, self.dxy)

    def partial_y(self):
        return Jet1(self.dy, self.dxy, self.dyy)

    def _lift(self, other):
        return other if isinstance(other, Jet2) else Jet2(float(other))

    def __add__(self, other):
        o = self._lift(other)
        return Jet2(self.v + o.v, self.dx + o.dx, self.dy + o.dy,
                    self.dxx + o.dxx, self.dxy + o.dxy, self.dyy + o.dyy)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Jet2(self.v - o.v, self.dx - o.dx, self.dy - o.dy,
                    self.dxx - o.dxx, self.dxy - o.dxy, self.dyy - o.dyy)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Jet2(-self.v, -self.dx, -self.dy, -self.dxx, -self.dxy, -self.dyy)

    def __mul__(self, other):
        p, q = self, self._lift(other)
        return Jet2(
            p.v * q.v,
            p.dx * q.v + p.v * q.dx,
            p.dy * q.v + p.v * q.dy,
            p.dxx * q.v + 2.0 * p.dx * q.dx + p.v * q.dxx,
            p.dxy * q.v + p.dx * q.dy + p.dy * q.dx + p.v * q.dxy,
            p.dyy * q.v + 2.0 * p.dy * q.dy + p.v * q.dyy,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        p, q = self, self._lift(other)
        r = p.v / q.v
        rx = (p.dx - r * q.dx) / q.v
        ry = (p.dy - r * q.dy) / q.v
        return Jet2(
            r,
            rx,
            ry,
            (p.dxx - 2.0 * rx * q.dx - r * q.dxx) / q.v,
            (p.dxy - rx * q.dy - ry * q.dx - r * q.dxy) / q.v,
            (p.dyy - 2.0 * ry * q.dy - r * q.dyy) / q.v,
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def chain(self, f0, f1, f2):
        """Compose with a scalar function whose value, first and second
        derivatives at ``self.v`` are ``f0``, ``f1``, ``f2``."""
        u = self
        return Jet2(
            f0,
            f1 * u.dx,
            f1 * u.dy,
            f2 * u.dx * u.dx + f1 * u.dxx,
            f2 * u.dx * u.dy + f1 * u.dxy,
            f2 * u.dy * u.dy + f1 * u.dyy,
        )
