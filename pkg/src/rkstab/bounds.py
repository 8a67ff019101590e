"""Bound calculators for absolute/parabolic stability radii and threshold factors.

Each calculator returns a BoundReport carrying the value, the root equation
it solved (as a coefficient list, so callers can re-verify independently),
and any auxiliary quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from .poly_core import Interval, Poly
from .quadrature import lambda_max
from .roots import mu_bound, smallest_negative_root, unique_negative_root
from .special import chebyshev_shifted, laguerre_neg_poly, laguerre_smallest_zero

__all__ = [
    "BoundReport",
    "absolute_upper",
    "parabolic_upper",
    "parabolic_lower",
    "parabolic_limit_cap",
    "stage_inequality",
    "damped_parabolic_upper",
    "closed_form_optimal",
    "threshold_upper_lower",
    "first_order_segment_optimal",
    "guillou_lago_damped",
]


@dataclass(frozen=True)
class BoundReport:
    name: str
    m: int
    n: int
    value: float
    kind: str                      # "upper" | "lower"
    source: str
    root_equation: str | None = None
    aux: dict = field(default_factory=dict)

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ValueError("bound value must be finite")
        if self.kind not in ("upper", "lower"):
            raise ValueError("kind must be 'upper' or 'lower'")


def _laguerre_shift_poly(m: int, n: int, b: float) -> Poly:
    """L_n^{(-m-1)}(x) - b as a Poly."""
    base = laguerre_neg_poly(n, -m - 1)
    c = base.coeffs.copy()
    c[0] -= b
    return Poly(c)


def _equation_str(p: Poly) -> str:
    return "coeffs(ascending)=" + ",".join(f"{c:.17g}" for c in p.coeffs)


def _check_args(m: int, n: int):
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got (m, n) = ({m}, {n})")


def absolute_upper(m: int, n: int) -> BoundReport:
    """Upper bound on the absolute (disc) stability radius: -xi/2, with xi the
    unique negative solution of L_n^{(-m-1)}(x) = C(m, n)."""
    _check_args(m, n)
    b = comb(m, n)
    eq = _laguerre_shift_poly(m, n, b)
    res = unique_negative_root(eq, mu_bound(m, n, b))
    value = -res.value / 2
    cap = m - 0.5 * (1 + (-1) ** n)
    if value > cap + 1e-9 * max(1.0, cap):
        raise ArithmeticError(f"bound {value} exceeds its cap {cap}")
    return BoundReport(
        name="absolute_upper",
        m=m, n=n, value=value, kind="upper",
        source="disc radius via polar form and the one-negative-root equation",
        root_equation=_equation_str(eq),
        aux={"xi": res.value, "cap": cap, "residual": res.residual},
    )


def parabolic_upper(m: int, n: int) -> BoundReport:
    """Upper bound on the parabolic radius: -xi, with xi the unique negative
    solution of L_n^{(-m-1)}(x) = C(2m, 2n).  Also records the closed-form cap
    (n!)^{1/n} (C(2m,2n) - C(m,n))^{1/n} + 2m - (1 + (-1)^n)."""
    _check_args(m, n)
    b = comb(2 * m, 2 * n)
    eq = _laguerre_shift_poly(m, n, b)
    res = unique_negative_root(eq, mu_bound(m, n, b))
    value = -res.value
    cap = factorial(n) ** (1.0 / n) * (b - comb(m, n)) ** (1.0 / n) + 2 * m - (1 + (-1) ** n)
    if value > cap + 1e-9 * max(1.0, cap):
        raise ArithmeticError(f"root bound {value} exceeds closed-form cap {cap}")
    return BoundReport(
        name="parabolic_upper",
        m=m, n=n, value=value, kind="upper",
        source="segment radius via Chebyshev ordinate domination",
        root_equation=_equation_str(eq),
        aux={"xi": res.value, "closed_form_cap": cap, "residual": res.residual},
    )


def parabolic_lower(m: int, n: int) -> BoundReport:
    """Lower bound on the parabolic radius: -eta, with eta the unique negative
    zero of L_n^{(-m-1)}(x) = C(m, n)."""
    _check_args(m, n)
    b = comb(m, n)
    eq = _laguerre_shift_poly(m, n, b)
    res = unique_negative_root(eq, mu_bound(m, n, b))
    return BoundReport(
        name="parabolic_lower",
        m=m, n=n, value=-res.value, kind="lower",
        source="variation-diminishing control-ordinate construction",
        root_equation=_equation_str(eq),
        aux={"eta": res.value, "residual": res.residual},
    )


def parabolic_limit_cap(n: int) -> float:
    """Cap on lim_m theta_{m,n} / m^2, provided the limit exists:
    4 (n! / (2n)!)^{1/n}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 4.0 * (factorial(n) / factorial(2 * n)) ** (1.0 / n)


def stage_inequality(m: int, n: int, p: int, r_lower_prev: float) -> Interval:
    """Bracket [r_prev, lambda_p^{(m)} r_prev] for the disc radius at order
    2p-1, given r_prev = r_{m-1, 2p-1}."""
    if not (m >= n >= 2 * p - 1 >= 1):
        raise ValueError("need m >= n >= 2p-1 >= 1")
    lam = lambda_max(m, p)
    return Interval(r_lower_prev, lam * r_lower_prev)


def damped_poly(m: int, n: int, eta: float, delta: float) -> Poly:
    """The damped-bound polynomial whose most negative root gives the bound.

    (x + delta)^{m-n} L_n^{(-m-1)}(x)
        - (1 - eta) C(m,n) sum_i [C(2m,2i) C(m-n,i) / C(m,i)] x^i (-delta)^{m-n-i}.

    The per-term sign (-1)^{m-n-i} follows the derivation through the pinned
    Chebyshev blossom; with it the eta = delta = 0 case collapses exactly to
    the undamped root equation.
    """
    _check_args(m, n)
    if not 0 <= eta < 1:
        raise ValueError("eta must lie in [0, 1)")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    lag = laguerre_neg_poly(n, -m - 1).coeffs
    lead = np.array([1.0])
    for _ in range(m - n):
        lead = np.convolve(lead, [delta, 1.0])
    first = np.convolve(lead, lag)
    out = first.copy()
    for i in range(m - n + 1):
        term = (
            (-1.0) ** (m - n - i)
            * comb(2 * m, 2 * i) * comb(m - n, i) / comb(m, i)
            * delta ** (m - n - i)
        )
        out[i] -= (1.0 - eta) * comb(m, n) * term
    return Poly(out)


def damped_parabolic_upper(m: int, n: int, eta: float, delta: float) -> BoundReport:
    """Upper bound on the damped radius: minus the most negative root of the
    damped-bound polynomial.  Reduces to parabolic_upper at eta = delta = 0."""
    eq = damped_poly(m, n, eta, delta)
    cap = parabolic_upper(m, n).aux["closed_form_cap"]
    search_lo = -(cap + 2 * m * delta + 10 * (1 + delta))
    res = None
    for _ in range(3):
        try:
            res = smallest_negative_root(eq, search_lo)
            break
        except Exception:
            search_lo *= 2.0
    if res is None:
        res = smallest_negative_root(eq, search_lo)
    return BoundReport(
        name="damped_parabolic_upper",
        m=m, n=n, value=-res.value, kind="upper",
        source="generalized Chebyshev-ordinate domination with damping",
        root_equation=_equation_str(eq),
        aux={"eta": eta, "delta": delta, "xi": res.value, "residual": res.residual},
    )


def closed_form_optimal(m: int, order: int):
    """Known optimal disc polynomials: order 1 is (1 + z/m)^m with radius m;
    order 2 is ((m-1)/m)(1 + z/(m-1))^m + 1/m with radius m-1."""
    if order not in (1, 2):
        raise ValueError("closed forms exist for orders 1 and 2 only")
    if m < order:
        raise ValueError("need m >= order")
    if order == 1:
        coeffs = [comb(m, k) / m**k for k in range(m + 1)]
        return Poly(coeffs), float(m)
    mm = m - 1.0
    coeffs = [(m - 1) / m * comb(m, k) / mm**k for k in range(m + 1)]
    coeffs[0] += 1.0 / m
    return Poly(coeffs), float(m - 1)


def threshold_upper_lower(m: int, n: int) -> Interval:
    """Bracket for the optimal threshold factor R_{m,n} from smallest zeros of
    classical Laguerre polynomials.

    For odd n = 2p-1 the bracket is [l_p^{(m-2p+1)}, l_p^{(m-p)}]; even
    n = 2p reuses the odd bracket one stage down, since R_{m,2p} equals
    R_{m-1,2p-1}.  Clipped against the coarse cap R <= m - n + 1.
    """
    if not m > n >= 1:
        raise ValueError("need m > n >= 1")
    if n % 2 == 1:
        p = (n + 1) // 2
        mb = m
    else:
        p = n // 2
        mb = m - 1
        if mb <= 2 * p - 1:
            return Interval(1e-12, m - n + 1.0)
    lo = laguerre_smallest_zero(p, mb - 2 * p + 1)
    hi = laguerre_smallest_zero(p, mb - p)
    cap = m - n + 1.0
    hi = min(hi, cap)
    if not lo < hi:
        hi = lo + 1e-9 * max(1.0, abs(lo))   # bracket collapses (exact cases)
    return Interval(lo, hi)


def first_order_segment_optimal(m: int) -> Poly:
    """The first-order segment-optimal polynomial T_m(1 + x / m^2),
    attaining the radius 2 m^2."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return chebyshev_shifted(m, Interval(-2.0 * m * m, 0.0))


def guillou_lago_damped(m: int, eta: float):
    """First-order damped Chebyshev construction.

    Returns (poly, span, delta_eff, eta_eff): the polynomial
    T_m(w0 + w1 x) / T_m(w0) with w0 = 1 + eta/m^2, the length of the
    interval where its magnitude stays below its interior-extremum level
    1 - eta_eff, and the gap delta_eff that interval leaves at the origin.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    w0 = 1.0 + eta / m**2
    base = chebyshev_shifted(m, Interval(-1.0, 1.0))
    tm_w0 = base(w0)
    tmp_w0 = base.derivative(1)(w0)
    w1 = tm_w0 / tmp_w0
    # |T_m| <= 1 exactly on [-1, 1]; map back to x
    x_left = (-1.0 - w0) / w1
    x_right = (1.0 - w0) / w1
    scaled = Poly(base.coeffs / tm_w0)
    # compose T_m(w0 + w1 x) / T_m(w0)
    lin = Poly([w0, w1])
    out = Poly([0.0])
    px = Poly([1.0])
    for c in scaled.coeffs:
        out = out + px * float(c)
        px = px * lin
    eta_eff = 1.0 - 1.0 / tm_w0
    return out, -x_left, -x_right, eta_eff
