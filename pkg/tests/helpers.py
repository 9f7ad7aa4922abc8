"""Random expression generators and finite-difference oracles for the tests."""

import numpy as np

from dtwist.expr import eval_scalar
from dtwist.geometry import christoffels

GEO_F = "exp(x+y)+sin(x)^2+1"
GEO_G = "exp(x+y)+1"
FLAT_F = "exp(x)+1"
FLAT_G = "sin(y)^2+1"


def _const(rng):
    return repr(round(float(rng.uniform(0.3, 2.0)), 3))


def random_expr(rng, depth=3, variables=("x", "y")):
    """A random smooth expression, defined everywhere on [-2, 2]^2."""
    if depth == 0 or rng.random() < 0.25:
        return str(rng.choice([*variables, *variables, _const(rng)]))

    def sub():
        return random_expr(rng, depth - 1, variables)

    a = sub()
    kind = rng.integers(0, 15)
    if kind == 0:
        return f"({a}) + ({sub()})"
    if kind == 1:
        return f"({a}) - ({sub()})"
    if kind == 2:
        return f"({a}) * ({sub()})"
    if kind == 3:
        return f"({a}) / (1.5 + ({sub()})^2)"
    if kind == 4:
        return f"sin({a})"
    if kind == 5:
        return f"cos({a})"
    if kind == 6:
        return f"tanh({a})"
    if kind == 7:
        return f"exp(0.5*sin({a}))"
    if kind == 8:
        return f"log(1 + ({a})^2)"
    if kind == 9:
        return f"sqrt(1 + ({a})^2)"
    if kind == 10:
        return f"sinh(0.5*tanh({a}))"
    if kind == 11:
        return f"cosh(0.5*cos({a}))"
    if kind == 12:
        return f"tan(0.5*sin({a}))"
    if kind == 13:
        return f"(1.5 + sin({a}))^(0.5*cos({sub()}))"
    return f"-({a})^{int(rng.integers(2, 4))}"


def random_positive(rng, depth=2, at_least_one=False):
    """A random expression bounded below by 1 (or by a positive constant)."""
    e = random_expr(rng, depth)
    if at_least_one:
        form = rng.integers(0, 3)
        if form == 0:
            return f"1 + ({e})^2"
        if form == 1:
            return f"cosh({e})"
        return f"1 + exp(0.5*sin({e}))"
    form = rng.integers(0, 3)
    if form == 0:
        return f"0.5 + ({e})^2"
    if form == 1:
        return f"exp(0.5*sin({e}))"
    return f"2 + sin({e})"


def random_point(rng, lo=-1.0, hi=1.0):
    return (float(rng.uniform(lo, hi)), float(rng.uniform(lo, hi)))


def fd_partials(fld, x, y, h=1e-4):
    """Central differences of a scalar field: (dx, dy, dxx, dxy, dyy)."""
    def e(a, b):
        return eval_scalar(fld, a, b)

    f0 = e(x, y)
    fxp, fxm = e(x + h, y), e(x - h, y)
    fyp, fym = e(x, y + h), e(x, y - h)
    return (
        (fxp - fxm) / (2 * h),
        (fyp - fym) / (2 * h),
        (fxp - 2 * f0 + fxm) / (h * h),
        (e(x + h, y + h) - e(x + h, y - h) - e(x - h, y + h) + e(x - h, y - h)) / (4 * h * h),
        (fyp - 2 * f0 + fym) / (h * h),
    )


def fd_curvature_c(m, p, h=1e-4):
    """y-component of ∇_∂y ∇_∂x ∂x - ∇_∂x ∇_∂y ∂x, differentiating the
    connection coefficients numerically."""
    x, y = p
    G = christoffels(m, p)
    Gyp, Gym = christoffels(m, (x, y + h)), christoffels(m, (x, y - h))
    Gxp, Gxm = christoffels(m, (x + h, y)), christoffels(m, (x - h, y))
    d_y_Gxx_y = (Gyp.Gxx_y - Gym.Gxx_y) / (2 * h)
    d_x_Gxy_y = (Gxp.Gxy_y - Gxm.Gxy_y) / (2 * h)
    first = d_y_Gxx_y + G.Gxx_x * G.Gxy_y + G.Gxx_y * G.Gyy_y
    second = d_x_Gxy_y + G.Gxy_x * G.Gxx_y + G.Gxy_y * G.Gxy_y
    return first - second


def rel_err(exact, approx):
    return abs(exact - approx) / max(1.0, abs(exact))


def seeded(seed):
    return np.random.default_rng(seed)
