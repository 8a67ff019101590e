"""Stability-region rasterization and control-polygon extraction.

Marching squares runs on log|P| (iso-level 0), which behaves much better
than |P| near the steep region boundary; every contour vertex is then
refined along its crossing edge until it sits on |P| = 1 within 1e-3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly_core import Interval, Poly, to_bernstein

__all__ = ["Window", "RegionRaster", "rasterize", "control_polygon", "auto_window"]


@dataclass(frozen=True)
class Window:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError("degenerate window")


@dataclass(frozen=True)
class RegionRaster:
    window: Window
    resolution: tuple          # (nx, ny)
    mask: np.ndarray           # boolean, shape (ny, nx): |P(z)| <= 1
    boundary: list             # list of polylines, each a list of complex


def auto_window(real_radius: float) -> Window:
    """Frame [-1.2 r, 0.2 r] x symmetric imaginary span."""
    r = max(real_radius, 1e-6)
    half = 0.7 * r
    return Window(-1.2 * r, 0.2 * r, -half, half)


def _edge_refine(poly: Poly, z0: complex, z1: complex, f0: float, f1: float):
    """Bisect |P| - 1 along the segment [z0, z1]; f = log|P| at the ends."""
    a, b, fa = z0, z1, f0
    for _ in range(60):
        mid = 0.5 * (a + b)
        fm = np.log(max(abs(poly(mid)), 1e-300))
        if fa * fm <= 0:
            b = mid
        else:
            a, fa = mid, fm
        if abs(abs(poly(0.5 * (a + b))) - 1.0) <= 1e-3:
            break
    return 0.5 * (a + b)


# marching-squares segment table: case -> list of (edge_in, edge_out)
# edges: 0 bottom, 1 right, 2 top, 3 left
_CASES = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)],
    6: [(0, 2)], 7: [(3, 2)], 8: [(2, 3)], 9: [(2, 0)],
    11: [(2, 1)], 12: [(1, 3)], 13: [(1, 0)], 14: [(0, 3)],
}


def rasterize(poly: Poly, window: Window, resolution: tuple) -> RegionRaster:
    """Boolean mask of |P| <= 1 plus refined marching-squares boundary."""
    nx, ny = resolution
    if nx < 16 or ny < 16:
        raise ValueError("resolution must be at least 16 x 16")
    xs = np.linspace(window.re_lo, window.re_hi, nx)
    ys = np.linspace(window.im_lo, window.im_hi, ny)
    X, Y = np.meshgrid(xs, ys)
    Z = X + 1j * Y
    vals = np.abs(poly(Z))
    mask = vals <= 1.0
    with np.errstate(divide="ignore"):
        F = np.log(np.maximum(vals, 1e-300))

    def edge_point(ix, iy, edge):
        # corner order: (ix,iy) bottom-left in index space
        if edge == 0:
            p0, p1 = (ix, iy), (ix + 1, iy)
        elif edge == 1:
            p0, p1 = (ix + 1, iy), (ix + 1, iy + 1)
        elif edge == 2:
            p0, p1 = (ix + 1, iy + 1), (ix, iy + 1)
        else:
            p0, p1 = (ix, iy + 1), (ix, iy)
        f0, f1 = F[p0[1], p0[0]], F[p1[1], p1[0]]
        z0 = complex(xs[p0[0]], ys[p0[1]])
        z1 = complex(xs[p1[0]], ys[p1[1]])
        if f0 == f1:
            return 0.5 * (z0 + z1)
        t = f0 / (f0 - f1)
        z_lin = z0 + t * (z1 - z0)
        if f0 * f1 <= 0:
            return _edge_refine(poly, z0, z1, f0, f1)
        return z_lin

    def edge_key(ix, iy, edge):
        # canonical (node, node) key so neighbors share endpoints
        if edge == 0:
            return (ix, iy, "h")
        if edge == 1:
            return (ix + 1, iy, "v")
        if edge == 2:
            return (ix, iy + 1, "h")
        return (ix, iy, "v")

    segments = []   # (key_a, key_b, z_a, z_b) in deterministic cell order
    for iy in range(ny - 1):
        for ix in range(nx - 1):
            idx = 0
            if F[iy, ix] < 0:
                idx |= 1
            if F[iy, ix + 1] < 0:
                idx |= 2
            if F[iy + 1, ix + 1] < 0:
                idx |= 4
            if F[iy + 1, ix] < 0:
                idx |= 8
            if idx in (0, 15):
                continue
            if idx in (5, 10):
                center = 0.25 * (F[iy, ix] + F[iy, ix + 1] + F[iy + 1, ix + 1] + F[iy + 1, ix])
                if idx == 5:
                    pairs = [(3, 0), (1, 2)] if center >= 0 else [(3, 2), (1, 0)]
                else:
                    pairs = [(0, 1), (2, 3)] if center >= 0 else [(0, 3), (2, 1)]
            else:
                pairs = _CASES[idx]
            for e_in, e_out in pairs:
                segments.append(
                    (edge_key(ix, iy, e_in), edge_key(ix, iy, e_out),
                     edge_point(ix, iy, e_in), edge_point(ix, iy, e_out))
                )

    # chain segments into polylines; deterministic: walk in insertion order
    by_key: dict = {}
    for si, (ka, kb, za, zb) in enumerate(segments):
        by_key.setdefault(ka, []).append(si)
        by_key.setdefault(kb, []).append(si)
    used = [False] * len(segments)
    polylines = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        ka, kb, za, zb = segments[start]
        chain_keys = [ka, kb]
        chain = [za, zb]
        # extend forward then backward
        for direction in (1, 0):
            while True:
                tip = chain_keys[-1] if direction else chain_keys[0]
                nxt = None
                for si in by_key.get(tip, []):
                    if not used[si]:
                        nxt = si
                        break
                if nxt is None:
                    break
                used[nxt] = True
                ka2, kb2, za2, zb2 = segments[nxt]
                if direction:
                    if ka2 == tip:
                        chain_keys.append(kb2)
                        chain.append(zb2)
                    else:
                        chain_keys.append(ka2)
                        chain.append(za2)
                else:
                    if ka2 == tip:
                        chain_keys.insert(0, kb2)
                        chain.insert(0, zb2)
                    else:
                        chain_keys.insert(0, ka2)
                        chain.insert(0, za2)
        polylines.append(chain)
    return RegionRaster(window, (nx, ny), mask, polylines)


def control_polygon(poly: Poly, iv: Interval, N: int) -> list:
    """Control points (abscissa, ordinate) of `poly` over `iv` at degree N."""
    if N < poly.exact_degree:
        raise ValueError("N must be at least the exact degree")
    bf = to_bernstein(poly, iv, N)
    return list(zip(bf.abscissae().tolist(), list(bf.ordinates)))
