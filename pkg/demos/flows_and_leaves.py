"""
Integral curves, geodesics and leaves
=====================================

Integrate the unit diagonal field, compare it with the geodesic through the
same point, then trace a family of leaves and save them as SVG.
"""

import numpy as np

from dtwist.cli import render_svg
from dtwist.fields import canonical_unit_field, orthogonal_unit_field
from dtwist.flow import arc_length, flow_integral_curve, integrate_geodesic, speed_squared, trace_leaves
from dtwist.geometry import TwistedMetric

m = TwistedMetric("exp(x+y) + sin(x)^2 + 1", "exp(x+y) + 1")
U = canonical_unit_field(m)

curve = flow_integral_curve(m, U, (0.0, 0.0), 1e-3, 2000)
geo = integrate_geodesic(m, (0.0, 0.0), U.at((0.0, 0.0)), 1e-3, 2000)
gap = np.max(np.hypot(curve.x - geo.x, curve.y - geo.y))
print(f"integral curve vs geodesic, max gap over t in [0, 2]: {gap:.2e}")
print(f"energy drift along the geodesic: {np.ptp(speed_squared(m, geo)):.2e}")
print(f"arc length of the unit-speed geodesic: {arc_length(m, geo):.12f}")

# leaves orthogonal to the geodesic field, seeded along the y-axis
flat = TwistedMetric("exp(x) + 1", "sin(y)^2 + 1")
E = orthogonal_unit_field(flat, canonical_unit_field(flat))
seeds = [(0.0, round(float(y), 2)) for y in np.linspace(-0.8, 0.8, 5)]
leaves = trace_leaves(flat, E, seeds, 1e-2, 60)
for seed, leaf in zip(seeds, leaves):
    print(f"leaf through {seed}: {len(leaf)} samples, ends at ({leaf.x[-1]:+.3f}, {leaf.y[-1]:+.3f})")

with open("leaves.svg", "w") as fh:
    fh.write(render_svg(leaves, seeds, (-1.0, 1.0, -1.0, 1.0)))
print("wrote leaves.svg")
