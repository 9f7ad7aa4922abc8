"""
Is the diagonal unit field geodesic?
====================================

The field (1/(sqrt2 f), 1/(sqrt2 g)) has unit length everywhere. It is a
geodesic field exactly where f_y = g_x, so a grid scan either finds the
residual at rounding level or points at where the mismatch is largest.
"""

from dtwist.fields import canonical_unit_field, check_geodesic_field, twist_mismatch
from dtwist.geometry import TwistedMetric

F = "exp(x+y) + sin(x)^2 + 1"

for g in ("exp(x+y) + 1", "1"):
    m = TwistedMetric(F, g)
    rep = check_geodesic_field(m, canonical_unit_field(m), grid=21)
    print(f"g = {g}")
    print(f"  sup residual   {rep.sup_residual:.3e}")
    print(f"  sup unit error {rep.sup_unit_defect:.3e}")
    print(f"  worst point    {rep.worst_point}, f_y - g_x there = {twist_mismatch(m, rep.worst_point):+.4f}")
    print(f"  geodesic: {rep.passed}")
