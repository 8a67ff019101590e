"""Certified scalar root finding for the one-negative-root equations.

Every bound in this package reduces to locating the single sign change of a
polynomial on a negative half-line, with an analytic lower hint available.
Bisection does the heavy lifting; a short Newton polish sharpens the result
and the residual/bracket pair certifies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .poly_core import Poly
from .special import pochhammer

__all__ = [
    "RootResult",
    "NoSignChange",
    "NoRootFound",
    "unique_negative_root",
    "mu_bound",
    "smallest_negative_root",
]


class NoSignChange(Exception):
    """The bracket shows no sign change; a precondition was violated."""


class NoRootFound(Exception):
    """The sign scan detected no root in the window; widen and retry."""


@dataclass(frozen=True)
class RootResult:
    value: float
    bracket: tuple
    iterations: int
    residual: float
    certified_by: str = "sign_change"   # or "residual" for multiple roots


def _as_callable(f):
    if isinstance(f, Poly):
        return f, f.derivative(1)
    return f, None


def _newton_polish(f, df, x, lo, hi, steps=5):
    for _ in range(steps):
        fx = f(x)
        if df is not None:
            d = df(x)
        else:
            h = 1e-6 * max(1.0, abs(x))
            d = (f(x + h) - f(x - h)) / (2 * h)
        if d == 0:
            break
        step = fx / d
        xn = x - step
        if not (lo <= xn <= hi) or not np.isfinite(xn):
            break
        x = xn
        if abs(step) < 1e-17 * max(1.0, abs(x)):
            break
    return x


def unique_negative_root(f, lower_hint: float) -> RootResult:
    """Root of `f` in [lower_hint, 0) when f has exactly one sign change there.

    `f` may be a Poly (analytic Newton derivative) or any scalar callable.
    The hint is doubled a few times if it does not yet bracket; total failure
    raises NoSignChange.
    """
    if lower_hint >= 0:
        raise ValueError("lower_hint must be negative")
    fun, dfun = _as_callable(f)
    lo = float(lower_hint)
    hi = 0.0
    fhi = fun(hi)
    if fhi >= 0.0:
        # x = 0 is a root of the even-order equality cases (up to float noise
        # on an exact zero); step just inside to bracket the negative root
        hi = -1e-9 * max(1.0, abs(lo))
        fhi = fun(hi)
    flo = fun(lo)
    expansions = 0
    while flo * fhi > 0 and expansions < 60:
        lo *= 2.0
        flo = fun(lo)
        expansions += 1
    if flo * fhi > 0:
        raise NoSignChange(f"no sign change in [{lo}, {hi}]")
    scale = max(1.0, abs(flo), abs(fhi))
    bracket = (lo, hi)
    a, b, fa = lo, hi, flo
    iterations = 0
    width_target = 1e-13 * abs(b - a)
    while b - a > width_target and iterations < 200:
        mid = 0.5 * (a + b)
        fm = fun(mid)
        iterations += 1
        if fa * fm <= 0:
            b = mid
        else:
            a, fa = mid, fm
    x = _newton_polish(fun, dfun, 0.5 * (a + b), bracket[0], bracket[1])
    return RootResult(
        value=float(x),
        bracket=bracket,
        iterations=iterations,
        residual=float(abs(fun(x))) / scale,
    )


def mu_bound(m: int, n: int, b: float) -> float:
    """Analytic lower bound for the negative solution of L_n^{(-m-1)}(x) = b.

    Valid for m >= n >= 1 and b >= C(m, n); used to seed the bisection.
    """
    if not m >= n >= 1:
        raise ValueError("need m >= n >= 1")
    if b < comb(m, n):
        raise ValueError("b must be >= C(m, n)")
    poch = pochhammer(m - n + 1, n)[n]
    return -((b * factorial(n) - poch) ** (1.0 / n)) - 2 * m + (1 + (-1) ** n)


def smallest_negative_root(p: Poly, search_lo: float) -> RootResult:
    """Most negative real root of `p` in [search_lo, 0).

    Sign-scan on a geometric grid (ratio 1.25) from search_lo toward zero,
    then bisection + Newton.  A grid point where |p| nearly vanishes without
    a sign change (double root) converges by residual only and is flagged.
    """
    if search_lo >= 0:
        raise ValueError("search_lo must be negative")
    grid = [search_lo]
    while abs(grid[-1]) > 1e-12 and len(grid) < 200:
        grid.append(grid[-1] / 1.25)
    vals = [p(x) for x in grid]
    scale = max(1.0, max(abs(v) for v in vals))
    dp = p.derivative(1)
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            return RootResult(grid[i], (grid[i], grid[i]), 0, 0.0)
        if vals[i] * vals[i + 1] < 0:
            a, b, fa = grid[i], grid[i + 1], vals[i]
            iterations = 0
            target = 1e-13 * abs(b - a)
            while b - a > target and iterations < 200:
                mid = 0.5 * (a + b)
                fm = p(mid)
                iterations += 1
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
            x = _newton_polish(p, dp, 0.5 * (a + b), grid[i], grid[i + 1])
            return RootResult(float(x), (grid[i], grid[i + 1]), iterations, abs(p(x)) / scale)
    # no sign change: polish the closest grid point on p' (a touch of even
    # multiplicity is a critical point of p) and accept by residual alone
    imin = int(np.argmin([abs(v) for v in vals]))
    x = _newton_polish(dp, p.derivative(2), grid[imin], search_lo, 0.0, steps=50)
    if abs(p(x)) <= 1e-8 * scale:
        return RootResult(float(x), (grid[imin] * 1.25, grid[imin] / 1.25),
                          0, abs(p(x)) / scale, certified_by="residual")
    raise NoRootFound(f"no sign change of p in [{search_lo}, 0)")
