"""
Connection and curvature of a twisted plane
===========================================

The metric f(x,y)^2 dx^2 + g(x,y)^2 dy^2 is fixed by two positive
expressions. Everything below is computed from their exact jets.
"""

import numpy as np

from dtwist.geometry import TwistedMetric, christoffels, curvature, sectional_curvature

m = TwistedMetric("exp(x+y) + sin(x)^2 + 1", "exp(x+y) + 1")
G = christoffels(m, (0.0, 0.0))
print("connection coefficients at the origin:")
for name, value in zip(("Gxx_x", "Gxx_y", "Gyy_x", "Gyy_y", "Gxy_x", "Gxy_y"), G.as_tuple()):
    print(f"  {name} = {value:+.6f}")

cp = curvature(m, (0.0, 0.0))
print(f"R(dx,dy)dx = {cp.c:+.6f} dy,  R(dx,dy)dy = {cp.d:+.6f} dx")
print(f"sectional curvature K = {sectional_curvature(m, (0.0, 0.0)):+.6f}")

# f = 1, g = e^x is the hyperbolic plane: K = -1 everywhere
hyper = TwistedMetric("1", "exp(x)")
pts = np.random.default_rng(0).uniform(-3, 3, size=(5, 2))
print("hyperbolic K:", [round(sectional_curvature(hyper, tuple(p)), 12) for p in pts])

# and f = e^x + 1, g = sin(y)^2 + 1 is flat, although neither factor is constant
flat = TwistedMetric("exp(x) + 1", "sin(y)^2 + 1")
cp = curvature(flat, (0.4, -0.7))
print(f"flat example at (0.4, -0.7): c = {cp.c}, d = {cp.d}")
