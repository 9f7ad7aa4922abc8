import dataclasses
import math

import pytest

from dtwist.errors import DomainError
from dtwist.fields import CanonicalField, ExprField, canonical_unit_field
from dtwist.geometry import (
    Christoffels,
    TangentVector,
    TwistedMetric,
    christoffels,
    covariant_derivative,
    curvature,
    divergence,
    metric_inner,
    ricci_direction,
    sectional_curvature,
)

from helpers import (
    FLAT_F,
    FLAT_G,
    GEO_F,
    GEO_G,
    fd_curvature_c,
    random_expr,
    random_point,
    random_positive,
    seeded,
)

EUCLID = TwistedMetric("1", "1")
GEO = TwistedMetric(GEO_F, GEO_G)
HYPER = TwistedMetric("1", "exp(x)")
FLAT = TwistedMetric(FLAT_F, FLAT_G)


def test_metric_inner_examples():
    assert metric_inner(EUCLID, (0, 0), (1, 0), (1, 0)) == 1.0
    assert metric_inner(GEO, (0, 0), (1, 0), (1, 0)) == 4.0
    for m in (EUCLID, GEO, HYPER):
        assert metric_inner(m, (0.3, -0.2), (1, 0), (0, 1)) == 0.0


def test_nonpositive_twisting_function_is_an_error():
    with pytest.raises(DomainError) as info:
        metric_inner(TwistedMetric("x", "1"), (-1, 0), (1, 0), (1, 0))
    assert info.value.point == (-1, 0)
    with pytest.raises(DomainError):
        christoffels(TwistedMetric("1", "y"), (0, 0))


def test_christoffels_examples():
    assert christoffels(EUCLID, (0.4, 0.1)).as_tuple() == (0, 0, 0, 0, 0, 0)
    assert christoffels(GEO, (0, 0)).as_tuple() == (0.5, -0.5, -0.5, 0.5, 0.5, 0.5)
    assert christoffels(HYPER, (0, 0)).as_tuple() == (0, 0, -1, 0, 0, 1)


def test_single_mixed_pair_exposed():
    names = [f.name for f in dataclasses.fields(Christoffels)]
    assert names == ["Gxx_x", "Gxx_y", "Gyy_x", "Gyy_y", "Gxy_x", "Gxy_y"]
    assert not any(n.startswith("Gyx") for n in names)


def test_curvature_examples():
    cp = curvature(EUCLID, (0.2, 0.9))
    assert (cp.c, cp.d) == (0.0, 0.0)
    for p in [(0, 0), (0.5, -0.7), (-1, 1)]:
        cp = curvature(FLAT, p)
        assert (cp.c, cp.d, cp.ip) == (0.0, 0.0, 0.0)
    cp = curvature(HYPER, (0, 0))
    assert (cp.c, cp.d, cp.ip) == (-1.0, 1.0, -1.0)
    assert fd_curvature_c(HYPER, (0, 0)) == pytest.approx(-1.0, abs=1e-6)


def test_sectional_curvature_examples():
    assert sectional_curvature(EUCLID, (1, 2)) == 0.0
    rng = seeded(3)
    for _ in range(20):
        p = random_point(rng, -3, 3)
        assert sectional_curvature(HYPER, p) == pytest.approx(-1.0, abs=1e-12)
        assert sectional_curvature(FLAT, p) == 0.0


def test_against_symbolic_riemann_tensor():
    # independent route: Levi-Civita coefficients and R^l_ijk from the metric
    # matrix via sympy, with R(X,Y)Z = ∇_Y∇_X Z - ∇_X∇_Y Z = -R_std(X,Y)Z
    sp = pytest.importorskip("sympy")
    x, y = sp.symbols("x y")
    cases = [(GEO_F, GEO_G), ("1+x^2*y^2", "cosh(x*y)+y^2"), ("2+sin(x*y)", "exp(x-y^2)")]
    for fs, gs in cases:
        f, g = sp.sympify(fs.replace("^", "**")), sp.sympify(gs.replace("^", "**"))
        X = (x, y)
        gm = sp.diag(f ** 2, g ** 2)
        gi = sp.diag(1 / f ** 2, 1 / g ** 2)
        gam = [[[sum(gi[l, k] * (sp.diff(gm[k, i], X[j]) + sp.diff(gm[k, j], X[i])
                                 - sp.diff(gm[i, j], X[k])) for k in range(2)) / 2
                 for j in range(2)] for i in range(2)] for l in range(2)]

        def riem(l, i, j, k):
            return (sp.diff(gam[l][i][k], X[j]) - sp.diff(gam[l][i][j], X[k])
                    + sum(gam[l][j][s] * gam[s][i][k] - gam[l][k][s] * gam[s][i][j] for s in range(2)))

        m = TwistedMetric(fs, gs)
        for p in [(0.3, -0.4), (-0.8, 0.6)]:
            sub = {x: p[0], y: p[1]}

            def ev(e):
                return float(e.subs(sub).evalf(30))

            ch = christoffels(m, p)
            sym = [ev(gam[l][i][j]) for i, j, l in
                   [(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1)]]
            assert ch.as_tuple() == pytest.approx(sym, rel=1e-12, abs=1e-13)
            cp = curvature(m, p)
            assert cp.c == pytest.approx(ev(-riem(1, 0, 0, 1)), rel=1e-11, abs=1e-12)
            assert cp.d == pytest.approx(ev(-riem(0, 1, 0, 1)), rel=1e-11, abs=1e-12)
            # R(∂x,∂y)∂x has no ∂x part and R(∂x,∂y)∂y no ∂y part
            assert ev(riem(0, 0, 0, 1)) == pytest.approx(0, abs=1e-12)
            assert ev(riem(1, 1, 0, 1)) == pytest.approx(0, abs=1e-12)


def test_pair_symmetry_of_curvature():
    # <R(∂x,∂y)∂y, ∂x> = -<R(∂x,∂y)∂x, ∂y>, i.e. f^2 d = -g^2 c
    rng = seeded(21)
    for _ in range(100):
        m = TwistedMetric(random_positive(rng), random_positive(rng))
        p = random_point(rng)
        f, g = m.values(p)
        cp = curvature(m, p)
        assert f * f * cp.d == pytest.approx(-cp.ip, rel=1e-9, abs=1e-12)
        assert cp.ip == g * g * cp.c


def test_curvature_matches_finite_difference_oracle():
    rng = seeded(5)
    for _ in range(100):
        m = TwistedMetric(random_positive(rng), random_positive(rng))
        p = random_point(rng)
        assert curvature(m, p).c == pytest.approx(fd_curvature_c(m, p), abs=1e-4)


def test_covariant_derivative_examples():
    v = covariant_derivative(EUCLID, (0.7, 0.2), ExprField("1", "0"), ExprField("x", "0"))
    assert tuple(v) == (1.0, 0.0)
    U = canonical_unit_field(GEO)
    assert tuple(covariant_derivative(GEO, (0, 0), U, U)) == pytest.approx((0, 0), abs=1e-15)
    W = ExprField("0", "exp(-x)")
    for p in [(0, 0), (0.4, -1.3), (-2, 5)]:
        v = covariant_derivative(HYPER, p, W, W)
        assert v.vx == pytest.approx(-1.0, rel=1e-14)
        assert v.vy == 0.0


def _d_dx(m, V):
    # covariant derivative along ∂x as a map of fields
    return lambda p: covariant_derivative(m, p, ExprField("1", "0"), V)


def test_metric_compatibility():
    rng = seeded(13)
    h = 1e-4
    for _ in range(150):
        m = TwistedMetric(random_positive(rng), random_positive(rng))
        V = ExprField(random_expr(rng, 2), random_expr(rng, 2))
        W = ExprField(random_expr(rng, 2), random_expr(rng, 2))
        x, y = random_point(rng)

        def ip(q):
            return metric_inner(m, q, V.at(q), W.at(q))

        for e, q_plus, q_minus in [((1, 0), (x + h, y), (x - h, y)), ((0, 1), (x, y + h), (x, y - h))]:
            E = ExprField(*map(str, e))
            lhs = (ip(q_plus) - ip(q_minus)) / (2 * h)
            rhs = (metric_inner(m, (x, y), covariant_derivative(m, (x, y), E, V), W.at((x, y)))
                   + metric_inner(m, (x, y), V.at((x, y)), covariant_derivative(m, (x, y), E, W)))
            assert lhs == pytest.approx(rhs, abs=1e-5)


def test_ricci_direction_examples():
    assert ricci_direction(EUCLID, (0, 0), TangentVector(1, 0)) == 0.0
    rng = seeded(8)
    for _ in range(10):
        p = random_point(rng)
        N = TangentVector(0.0, math.exp(-p[0]))
        assert ricci_direction(HYPER, p, N) == pytest.approx(sectional_curvature(HYPER, p), abs=1e-12)
        theta = rng.uniform(0, 2 * math.pi)
        f, g = FLAT.values(p)
        assert ricci_direction(FLAT, p, (math.cos(theta) / f, math.sin(theta) / g)) == 0.0


def test_ricci_equals_sectional_and_is_even():
    rng = seeded(17)
    for _ in range(100):
        m = TwistedMetric(random_positive(rng), random_positive(rng))
        p = random_point(rng)
        f, g = m.values(p)
        theta = rng.uniform(0, 2 * math.pi)
        N = (math.cos(theta) / f, math.sin(theta) / g)
        ric = ricci_direction(m, p, N)
        assert ric == pytest.approx(sectional_curvature(m, p), rel=1e-9, abs=1e-12)
        assert ricci_direction(m, p, (-N[0], -N[1])) == pytest.approx(ric, rel=1e-14, abs=1e-15)


def test_ricci_rejects_non_unit():
    with pytest.raises(ValueError):
        ricci_direction(GEO, (0, 0), (1, 0))


def test_divergence_examples():
    assert divergence(EUCLID, (0.3, 0.8), ExprField("x", "y")) == 2.0
    assert divergence(EUCLID, (0.3, 0.8), ExprField("1", "0")) == 0.0
    for p in [(0, 0), (1.5, -2)]:
        assert divergence(HYPER, p, ExprField("-1", "0")) == -1.0


def test_divergence_matches_volume_form_identity():
    # div V = (1/(fg)) [ (fg a)_x + (fg b)_y ], differenced numerically
    rng = seeded(23)
    h = 1e-5
    for _ in range(50):
        m = TwistedMetric(random_positive(rng), random_positive(rng))
        V = ExprField(random_expr(rng, 2), random_expr(rng, 2))
        x, y = random_point(rng)

        def flux(q, k):
            f, g = m.values(q)
            return f * g * V.at(q)[k]

        f, g = m.values((x, y))
        oracle = ((flux((x + h, y), 0) - flux((x - h, y), 0)) / (2 * h)
                  + (flux((x, y + h), 1) - flux((x, y - h), 1)) / (2 * h)) / (f * g)
        assert divergence(m, (x, y), V) == pytest.approx(oracle, abs=1e-6)


def test_metric_accepts_fields_and_numbers():
    m = TwistedMetric(2, "3")
    assert m.values((0, 0)) == (2.0, 3.0)
    assert isinstance(CanonicalField(m).at((0, 0))[0], float)
