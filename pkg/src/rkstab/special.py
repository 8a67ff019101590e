"""Special-function families used by the bound calculators.

Generalized Laguerre polynomials with (possibly negative) parameter are
defined by their explicit sum; no three-term recurrence is assumed off the
classical parameter range.  The G and R families tie those Laguerre
polynomials to a one-signed-root structure that the root finder exploits.
G_n also coincides, up to scaling, with the generalized reverse Bessel
polynomials, which is where its root pattern comes from; that relation is
not exposed here.
"""

from __future__ import annotations

from math import comb, factorial

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .poly_core import Interval, Poly

__all__ = [
    "pochhammer",
    "generalized_binomial",
    "laguerre_neg",
    "laguerre_neg_poly",
    "g_poly",
    "r_poly",
    "chebyshev_shifted",
    "chebyshev_bernstein_ordinate",
    "chebyshev_blossom_tail",
    "laguerre_smallest_zero",
]


def pochhammer(alpha: float, upto: int) -> np.ndarray:
    """Rising factorials (alpha)_0 .. (alpha)_upto."""
    vals = np.empty(upto + 1)
    vals[0] = 1.0
    for i in range(upto):
        vals[i + 1] = vals[i] * (alpha + i)
    return vals


def generalized_binomial(t: float, ell: int) -> float:
    """t (t-1) ... (t-ell+1) / ell!, valid for any real t."""
    out = 1.0
    for j in range(ell):
        out *= (t - j) / (ell - j)
    return out


def laguerre_neg(n: int, gamma: float, x):
    """Generalized Laguerre L_n^{(gamma)} by the explicit sum; any real gamma."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = np.asarray(x)
    total = np.zeros_like(x, dtype=complex if np.iscomplexobj(x) else float)
    for ell in range(n + 1):
        total = total + generalized_binomial(n + gamma, n - ell) * (-x) ** ell / factorial(ell)
    if np.ndim(x) == 0:
        return complex(total) if np.iscomplexobj(x) else float(total)
    return total


def laguerre_neg_poly(n: int, gamma: float) -> Poly:
    """L_n^{(gamma)} as a Poly."""
    return Poly(
        [
            generalized_binomial(n + gamma, n - ell) * (-1.0) ** ell / factorial(ell)
            for ell in range(n + 1)
        ]
    )


def g_poly(n: int, alpha: float) -> Poly:
    """Monic family sum_i C(n,i) (alpha)_i y^{n-i}; one negative root for odd n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    poch = pochhammer(alpha, n)
    coeffs = np.zeros(n + 1)
    for i in range(n + 1):
        coeffs[n - i] = comb(n, i) * poch[i]
    return Poly(coeffs)


def r_poly(n: int, alpha: float, beta: float) -> Poly:
    """beta - (-1)^n G_n(alpha, .); requires beta >= (alpha)_n."""
    if beta < pochhammer(alpha, n)[n]:
        raise ValueError("beta must be >= (alpha)_n")
    g = g_poly(n, alpha)
    coeffs = -((-1.0) ** n) * g.coeffs.copy()
    coeffs[0] += beta
    return Poly(coeffs)


def chebyshev_shifted(m: int, iv: Interval) -> Poly:
    """T_m((2x - (b+a)) / (b-a)) in monomial coefficients; sup-norm 1 on iv."""
    if m < 0:
        raise ValueError("m must be >= 0")
    t = np.zeros(m + 1)
    t[m] = 1.0
    cheb = np.polynomial.chebyshev.cheb2poly(t)  # T_m on [-1, 1]
    w = iv.hi - iv.lo
    lin = Poly([-(iv.hi + iv.lo) / w, 2.0 / w])
    out = Poly([0.0])
    px = Poly([1.0])
    for c in cheb:
        out = out + px * float(c)
        px = px * lin
    return out.elevated(m) if out.degree_bound < m else out


def chebyshev_bernstein_ordinate(m: int, i: int) -> float:
    """Bernstein ordinate i of T_m over its own interval: (-1)^{m-i} C(2m,2i)/C(m,i)."""
    return (-1.0) ** (m - i) * comb(2 * m, 2 * i) / comb(m, i)


def chebyshev_blossom_tail(m: int, n: int, iv: Interval, x) -> float:
    """Chebyshev blossom with n slots pinned at iv.lo and m-n slots at x.

    Equals sum_{i=0}^{m-n} (-1)^{m-i} [C(2m,2i)/C(m,i)] B_i^{m-n}(x, iv).
    """
    if not 0 <= n <= m:
        raise ValueError("need 0 <= n <= m")
    d = m - n
    a, b = iv.lo, iv.hi
    w = b - a
    s = (np.asarray(x, dtype=float) - a) / w
    total = np.zeros_like(s)
    for i in range(d + 1):
        bern = comb(d, i) * (1 - s) ** (d - i) * s**i
        total = total + chebyshev_bernstein_ordinate(m, i) * bern
    return float(total) if np.ndim(x) == 0 else total


def laguerre_smallest_zero(k: int, nu: float) -> float:
    """Smallest zero of the classical Laguerre polynomial L_k^{(nu)}, nu > -1.

    Computed as the smallest eigenvalue of the Jacobi matrix of the Laguerre
    recurrence; exact to machine precision at these small degrees.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if nu <= -1:
        raise ValueError("classical parameter required (nu > -1)")
    diag = np.array([2.0 * i + nu + 1.0 for i in range(k)])
    off = np.array([np.sqrt(i * (i + nu)) for i in range(1, k)])
    w = eigh_tridiagonal(diag, off, eigvals_only=True)
    return float(w.min())
