from math import comb, factorial

import numpy as np
import pytest

from rkstab import BernsteinForm, Interval, Poly, from_bernstein
from rkstab.bounds import closed_form_optimal, parabolic_lower
from rkstab.optimal import (
    FeasibilityProblem,
    disc_sup,
    feasible,
    optimal_radius,
    threshold_factor,
    touch_points,
)
from rkstab.special import laguerre_neg


def taylor_class_check(poly, n):
    for k in range(n + 1):
        assert poly.derivative(k)(0.0) == pytest.approx(1.0, rel=1e-9, abs=1e-9)


def test_feasible_disc_first_order_at_optimum():
    m = 5
    ok, poly = feasible(FeasibilityProblem(m, 1, float(m), "disc"))
    assert ok
    target, _ = closed_form_optimal(m, 1)
    assert np.abs(poly.coeffs - target.coeffs).max() <= 1e-6


def test_infeasible_disc_beyond_table_value():
    ok, _ = feasible(FeasibilityProblem(4, 3, 2.20, "disc"))
    assert not ok


def test_segment_feasibility_straddles_table_value():
    ok_lo, _ = feasible(FeasibilityProblem(6, 3, 16.0, "segment"))
    ok_hi, _ = feasible(FeasibilityProblem(6, 3, 16.1, "segment"))
    assert ok_lo and not ok_hi


def test_optimal_radius_second_order_family():
    res = optimal_radius(6, 2, "disc")
    assert res.radius == pytest.approx(5.0, abs=1e-3)
    target, _ = closed_form_optimal(6, 2)
    assert np.abs(res.poly.coeffs - target.coeffs).max() <= 1e-5
    taylor_class_check(res.poly, 2)


def test_optimal_radius_table_cell_disc():
    res = optimal_radius(6, 4, "disc")
    assert res.radius == pytest.approx(3.06, abs=0.01)
    taylor_class_check(res.poly, 4)
    assert res.certificate["verified_max"] <= 1 + 1e-7


def test_optimal_radius_table_cell_segment():
    res = optimal_radius(8, 4, "segment")
    assert res.radius == pytest.approx(19.929, abs=0.01)
    taylor_class_check(res.poly, 4)
    assert res.poly.sup_norm(Interval(-res.radius, 0)) <= 1 + 1e-9


def test_touch_points_disc_cell():
    res = optimal_radius(5, 3, "disc")
    loci = touch_points(res, tol=1e-4)
    assert len(loci) >= 5 - 3 + 2
    assert min(abs(z) for z in loci) <= 1e-9   # the origin is always a contact


def test_touch_points_first_order_includes_origin():
    res = optimal_radius(4, 1, "disc")
    loci = touch_points(res, tol=1e-4)
    assert min(abs(z) for z in loci) <= 1e-9


def test_segment_alternation_structure():
    m, n = 6, 3
    res = optimal_radius(m, n, "segment")
    pts = [-res.radius] + res.poly.real_extrema(Interval(-res.radius, 0.0)) + [0.0]
    vals = [res.poly(x) for x in pts]
    near = [v for v in vals if abs(abs(v) - 1) <= 1e-2]
    # signs alternate along the near-touch sequence
    signs = [np.sign(v) for v in near]
    alt = sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1]) + 1
    assert alt >= m - n + 2


def test_threshold_factor_low_orders():
    # order 1 reaches m (attained by the first-order disc polynomial), order
    # 2 reaches m - 1; both collapse their Laguerre brackets
    res = threshold_factor(5, 1)
    assert res.radius == pytest.approx(5.0, abs=1e-3)
    res = threshold_factor(5, 2)
    assert res.radius == pytest.approx(4.0, abs=1e-3)


def test_threshold_factor_certificate():
    res = threshold_factor(6, 3)
    coeffs = res.certificate["nonneg_basis_coeffs"]
    assert min(coeffs) >= -1e-7
    assert sum(coeffs) == pytest.approx(1.0, rel=1e-7)
    taylor_class_check(res.poly, 3)


def test_threshold_even_order_drops_one_stage():
    # R_{m, 2p} coincides with R_{m-1, 2p-1}
    r74 = threshold_factor(7, 4).radius
    r63 = threshold_factor(6, 3).radius
    assert r74 == pytest.approx(r63, abs=2e-3)


def test_threshold_inside_bracket():
    from rkstab.bounds import threshold_upper_lower

    for (m, n) in [(5, 3), (7, 3), (7, 4), (9, 4), (6, 3)]:
        iv = threshold_upper_lower(m, n)
        R = threshold_factor(m, n).radius
        assert iv.lo - 2e-3 <= R <= iv.hi + 2e-3


def test_threshold_below_disc_radius():
    for (m, n) in [(4, 3), (5, 3)]:
        R = threshold_factor(m, n).radius
        r = optimal_radius(m, n, "disc").radius
        assert R <= r + 1e-3


def test_bracket_consistency_with_bounds():
    from rkstab.bounds import absolute_upper, parabolic_upper

    res = optimal_radius(5, 3, "disc")
    assert res.radius <= absolute_upper(5, 3).value + 1e-9
    seg = optimal_radius(6, 3, "segment")
    assert parabolic_lower(6, 3).value - 1e-6 <= seg.radius <= parabolic_upper(6, 3).value


def test_quadrature_stage_inequality_on_computed_radii():
    from rkstab.quadrature import lambda_max

    for m in (5, 6, 7):
        r_cur = optimal_radius(m, 3, "disc").radius
        r_prev = optimal_radius(m - 1, 3, "disc").radius
        assert r_cur <= lambda_max(m, 2) * r_prev + 1e-6
        assert r_prev <= r_cur + 1e-6


def test_stage_inequality_threshold_factors():
    from rkstab.quadrature import lambda_max

    for m in (5, 6, 7):
        R_cur = threshold_factor(m, 3).radius
        R_prev = threshold_factor(m - 1, 3).radius
        assert R_cur <= lambda_max(m, 2) * R_prev + 1e-3


def test_segment_radius_monotonicity():
    thetas = [optimal_radius(m, 3, "segment").radius for m in (4, 5, 6)]
    assert thetas[0] < thetas[1] < thetas[2]
    assert optimal_radius(6, 4, "segment").radius <= thetas[2] + 1e-6


def test_damped_segment_radius():
    # damping shortens the usable interval; the bound still caps it
    from rkstab.bounds import damped_parabolic_upper

    res = optimal_radius(5, 2, "segment", damping=(0.05, 0.4))
    plain = optimal_radius(5, 2, "segment").radius
    assert 0 < res.radius <= plain
    assert res.radius <= damped_parabolic_upper(5, 2, 0.05, 0.4).value + 1e-6
    xs = np.linspace(-res.radius, -0.4, 2001)
    assert np.abs(res.poly(xs)).max() <= 0.95 + 1e-9


def test_variation_diminishing_construction():
    # control-ordinate construction from the lower-bound root stays inside
    # the unit band and carries the required Taylor data
    for (m, n) in [(5, 3), (8, 4), (6, 2)]:
        eta = -parabolic_lower(m, n).value
        ords = [(-1.0) ** k / comb(m, k) * laguerre_neg(k, -m - 1, eta) for k in range(n + 1)]
        ords += [0.0] * (m - n)
        qm = from_bernstein(BernsteinForm(0.0, eta, tuple(ords)))
        taylor_class_check(qm, n)
        xs = np.linspace(eta, 0.0, 4001)
        assert np.abs(qm(xs)).max() <= 1 + 1e-9


def test_truncated_elevation_stays_bounded():
    # degree elevation that truncates the ordinate list preserves the bound
    rng = np.random.default_rng(17)
    for _ in range(100):
        n = int(rng.integers(1, 6))
        m = n + int(rng.integers(1, 7))
        a = float(rng.uniform(-3, 0))
        b = a + float(rng.uniform(0.5, 3))
        raw = Poly(rng.uniform(-1, 1, n + 1))
        scale = raw.sup_norm(Interval(a, b))
        q = Poly(raw.coeffs / scale)
        from rkstab.poly_core import to_bernstein

        ords = list(to_bernstein(q, Interval(a, b), n).ordinates) + [0.0] * (m - n)
        elevated = from_bernstein(BernsteinForm(a, b, tuple(ords)))
        assert elevated.sup_norm(Interval(a, b)) <= 1 + 1e-9


def test_disc_sup_matches_dense_scan():
    rng = np.random.default_rng(19)
    coeffs = [1, 1, 0.5] + list(rng.uniform(-0.05, 0.05, 3))
    p = Poly(coeffs)
    r = 2.3
    phi = np.linspace(0, np.pi, 200001)
    dense = np.abs(p(r * (np.exp(1j * phi) - 1))).max()
    assert disc_sup(p, r) == pytest.approx(dense, rel=1e-9)


def test_feasibility_problem_validation():
    with pytest.raises(ValueError):
        FeasibilityProblem(4, 3, -1.0, "disc")
    with pytest.raises(ValueError):
        FeasibilityProblem(4, 3, 1.0, "ellipse")
    with pytest.raises(ValueError):
        optimal_radius(4, 3, "disc", damping=(0.1, 0.0))
