import numpy as np
import pytest

from rkstab import Interval, Poly
from rkstab.bounds import closed_form_optimal, first_order_segment_optimal
from rkstab.region import Window, auto_window, control_polygon, rasterize
from rkstab.special import chebyshev_bernstein_ordinate


def test_first_order_region_real_axis_slice():
    # |1 + x/2|^2 <= 1 on the reals exactly for x in [-4, 0]
    p, _ = closed_form_optimal(2, 1)
    raster = rasterize(p, Window(-5, 1, -3, 3), (241, 121))
    ys = np.linspace(-3, 3, 121)
    xs = np.linspace(-5, 1, 241)
    row = raster.mask[np.argmin(np.abs(ys)), :]
    inside = xs[row]
    assert inside.min() == pytest.approx(-4.0, abs=0.05)
    assert inside.max() == pytest.approx(0.0, abs=0.05)


def test_first_order_region_contains_disc():
    m = 3
    p, r = closed_form_optimal(m, 1)
    win = Window(-2 * m - 1, 1, -m - 1, m + 1)
    nx, ny = 201, 161
    raster = rasterize(p, win, (nx, ny))
    xs = np.linspace(win.re_lo, win.re_hi, nx)
    ys = np.linspace(win.im_lo, win.im_hi, ny)
    hx = xs[1] - xs[0]
    X, Y = np.meshgrid(xs, ys)
    inside_disc = np.hypot(X + m, Y) <= m - 2 * hx
    assert np.all(raster.mask[inside_disc])


def test_segment_poly_pinch_points():
    # the zero-width pinch: interior points of [-2m^2, 0] where |P| = 1
    m = 3
    p = first_order_segment_optimal(m)
    ext = p.real_extrema(Interval(-2.0 * m * m + 0.5, -0.5))
    vals = np.abs([p(x) for x in ext])
    assert np.isclose(vals, 1.0, atol=1e-9).sum() >= m - 1


def test_boundary_vertices_on_level_set():
    p, _ = closed_form_optimal(4, 2)
    raster = rasterize(p, auto_window(3.0), (101, 81))
    count = 0
    for line in raster.boundary:
        for z in line:
            assert abs(abs(p(z)) - 1.0) <= 1e-3
            count += 1
    assert count > 50


def test_contour_separates_mask():
    p, _ = closed_form_optimal(3, 1)
    win = auto_window(3.0)
    nx, ny = 121, 97
    raster = rasterize(p, win, (nx, ny))
    xs = np.linspace(win.re_lo, win.re_hi, nx)
    ys = np.linspace(win.im_lo, win.im_hi, ny)
    for line in raster.boundary:
        for z in line:
            ix = np.searchsorted(xs, z.real) - 1
            iy = np.searchsorted(ys, z.imag) - 1
            ix = min(max(ix, 0), nx - 2)
            iy = min(max(iy, 0), ny - 2)
            corners = raster.mask[iy : iy + 2, ix : ix + 2]
            assert corners.any() and not corners.all()


def test_rasterize_rejects_tiny_resolution():
    with pytest.raises(ValueError):
        rasterize(Poly([1, 1]), Window(-2, 0, -1, 1), (8, 8))


def test_control_polygon_endpoints_interpolate():
    p, r = closed_form_optimal(4, 1)
    iv = Interval(-2.0 * r, 0.0)
    pts = control_polygon(p, iv, 4)
    assert pts[0][0] == pytest.approx(iv.lo)
    assert pts[0][1] == pytest.approx(p(iv.lo), rel=1e-9, abs=1e-12)
    assert pts[-1][1] == pytest.approx(p(0.0), rel=1e-12)


def test_control_polygon_first_order_bounded():
    for m in (3, 5):
        p, r = closed_form_optimal(m, 1)
        pts = control_polygon(p, Interval(-2.0 * r, 0.0), m)
        assert max(abs(q) for _, q in pts) <= 1 + 1e-12


def test_control_polygon_abscissae_uniform():
    p = Poly([1, 1, 0.5])
    pts = control_polygon(p, Interval(-3.0, 0.0), 3)
    assert np.allclose([x for x, _ in pts], [-3, -2, -1, 0])


def test_chebyshev_ordinates_dominate_bounded_polys():
    # spot version of the ordinate-domination inequality on a closed form
    m = 4
    p = first_order_segment_optimal(m)
    iv = Interval(-2.0 * m * m, 0.0)
    pts = control_polygon(p, iv, m)
    for i, (_, q) in enumerate(pts):
        assert abs(q) <= abs(chebyshev_bernstein_ordinate(m, i)) + 1e-9
