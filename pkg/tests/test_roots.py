from math import comb, factorial

import numpy as np
import pytest

from rkstab import Poly, mu_bound, smallest_negative_root, unique_negative_root
from rkstab.roots import NoRootFound, NoSignChange
from rkstab.special import laguerre_neg_poly, pochhammer


def _laguerre_equation(m, n, b):
    p = laguerre_neg_poly(n, -m - 1)
    c = p.coeffs.copy()
    c[0] -= b
    return Poly(c)


def test_linear_root():
    res = unique_negative_root(Poly([2.0, 1.0]), -10.0)
    assert res.value == pytest.approx(-2.0, abs=1e-12)
    assert res.bracket[0] <= res.value <= res.bracket[1]


def test_lower_bound_equation_six_stages():
    eq = _laguerre_equation(6, 3, comb(6, 3))
    res = unique_negative_root(eq, mu_bound(6, 3, comb(6, 3)))
    assert res.value == pytest.approx(-8.2535, abs=1e-3)


def test_upper_bound_equation_five_stages():
    eq = _laguerre_equation(5, 3, comb(5, 3))
    res = unique_negative_root(eq, mu_bound(5, 3, comb(5, 3)))
    assert -res.value / 2 == pytest.approx(3.154, abs=5e-4)


def test_no_sign_change_raises():
    with pytest.raises(NoSignChange):
        unique_negative_root(Poly([1.0, 0.0, 1.0]), -2.0)   # x^2 + 1 > 0


def test_mu_bound_first_order():
    for m in (3, 7, 12):
        b = float(m + 4)
        assert mu_bound(m, 1, b) == pytest.approx(-b - m)


def test_mu_bound_diagonal():
    for n in (1, 2, 3, 5):
        assert mu_bound(n, n, 1.0) == pytest.approx(-2 * n + (1 + (-1) ** n))


def test_mu_bound_rejects_small_b():
    with pytest.raises(ValueError):
        mu_bound(5, 3, comb(5, 3) - 1)


def test_mu_bound_below_actual_root():
    rng = np.random.default_rng(21)
    for _ in range(100):
        m = int(rng.integers(1, 13))
        n = int(rng.integers(1, m + 1))
        b = float(rng.uniform(comb(m, n), 10 * comb(m, n)))
        hint = mu_bound(m, n, b)
        res = unique_negative_root(_laguerre_equation(m, n, b), hint)
        assert hint <= res.value + 1e-9


def test_root_lower_bound_theorem():
    # the negative root of beta - (-1)^n G_n(alpha, .) respects the analytic bound
    from rkstab.special import r_poly

    rng = np.random.default_rng(22)
    for _ in range(200):
        n = int(rng.integers(1, 10))
        alpha = float(rng.uniform(1e-3, 5))
        pn = pochhammer(alpha, n)[n]
        beta = pn * float(rng.uniform(1.0, 4.0)) + float(rng.uniform(0, 1))
        r = r_poly(n, alpha, beta)
        bound = -2 * (alpha + n - 1.5 - (-1) ** n / 2) - (beta - pn) ** (1.0 / n)
        res = unique_negative_root(r, min(bound * 1.5, -1e-6))
        assert res.value >= bound - 1e-9 * max(1, abs(bound))


def test_certification_invariant():
    rng = np.random.default_rng(23)
    for _ in range(50):
        m = int(rng.integers(2, 12))
        n = int(rng.integers(1, m + 1))
        b = float(comb(m, n) * rng.uniform(1, 6))
        eq = _laguerre_equation(m, n, b)
        res = unique_negative_root(eq, mu_bound(m, n, b))
        h = 1e-8 * max(1.0, abs(res.value))
        straddles = eq(res.value - h) * eq(res.value + h) <= 0
        assert straddles or res.residual <= 1e-12
        assert res.residual <= 1e-12


def test_smallest_negative_root_simple():
    p = Poly([3.0, 4.0, 1.0])    # (x+1)(x+3)
    res = smallest_negative_root(p, -10.0)
    assert res.value == pytest.approx(-3.0, abs=1e-10)


def test_smallest_negative_root_picks_most_negative():
    # roots at -0.5, -2, -6; window catches all three
    p = Poly([1.0]) * 1.0
    for r in (0.5, 2.0, 6.0):
        p = p * Poly([r, 1.0])
    res = smallest_negative_root(p, -40.0)
    assert res.value == pytest.approx(-6.0, abs=1e-9)


def test_smallest_negative_root_double_root():
    p = Poly([4.0, 4.0, 1.0])    # (x+2)^2
    res = smallest_negative_root(p, -10.0)
    assert res.value == pytest.approx(-2.0, abs=1e-5)
    assert res.certified_by == "residual"


def test_smallest_negative_root_none():
    with pytest.raises(NoRootFound):
        smallest_negative_root(Poly([1.0, 0.0, 1.0]), -5.0)
