"""
Totally geodesic foliations
===========================

For a unit normal field N, the curves orthogonal to N form a totally
geodesic foliation when Ric(N) equals the divergence of the covariant
derivative of N along itself. Two cases: one where both sides vanish and
one where they cancel at -1.
"""

from dtwist.fields import ExprField, canonical_unit_field, check_total_geodesy, total_geodesy_criterion
from dtwist.geometry import TwistedMetric

flat = TwistedMetric("exp(x) + 1", "sin(y)^2 + 1")
rep = check_total_geodesy(flat, canonical_unit_field(flat), grid=21)
print(f"flat example: sup |criterion| = {rep.sup_criterion:.2e}, sup |Ric| = {rep.sup_ric:.2e}")

# horizontal lines in the hyperbolic plane dx^2 + e^{2x} dy^2
hyper = TwistedMetric("1", "exp(x)")
N = ExprField("0", "exp(-x)")
for p in [(0.0, 0.0), (0.7, -1.2), (-1.5, 2.0)]:
    c = total_geodesy_criterion(hyper, p, N)
    print(f"at {p}: ric = {c.ric:+.12f}  div term = {c.div_term:+.12f}  criterion = {c.criterion:+.1e}")
