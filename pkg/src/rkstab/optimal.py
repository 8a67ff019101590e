"""True optimal radii by convex feasibility inside a bisection on the radius.

Three geometries:

* ``disc``       largest disc |z + r| <= r inside the stability region,
                 feasibility solved as a small second-order cone program;
* ``segment``    largest interval [-r, 0] with |P| <= 1, solved as an LP;
* ``abs_monotone`` largest interval of absolute monotonicity (threshold
                 factor), solved as a derivative-sign LP.

The polynomial value at the origin is pinned to 1, so plain grid minimax is
degenerate on the feasible side.  Both continuous geometries therefore
minimize a "funnel" objective, |P(x)| <= 1 + tau * rho(x), with a profile
rho vanishing toward the origin; genuine margins exist on the feasible side
and the exact sup of the returned candidate (companion/trig-polynomial
roots, no grid) is the arbiter of feasibility.  A Remez-style exchange step
appends the candidate's true peaks to the sample set so the discretization
gap collapses near the optimum.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import numpy as np
from scipy.optimize import linprog

from . import bounds as _bounds
from .poly_core import Interval, Poly

__all__ = [
    "SolverStall",
    "FeasibilityProblem",
    "OptimalResult",
    "feasible",
    "optimal_radius",
    "touch_points",
    "threshold_factor",
]

GEOMETRIES = ("disc", "segment", "abs_monotone")


class SolverStall(Exception):
    """The convex subproblem failed to make progress."""


def precision_scale() -> float:
    """Tolerance multiplier from RKSTAB_PRECISION: fast = 10x looser."""
    return 10.0 if os.environ.get("RKSTAB_PRECISION", "strict") == "fast" else 1.0


def base_coeffs(m: int, n: int) -> np.ndarray:
    c = np.zeros(m + 1)
    for j in range(n + 1):
        c[j] = 1.0 / factorial(j)
    return c


def _full_poly(m: int, n: int, alpha: np.ndarray) -> Poly:
    c = base_coeffs(m, n)
    if len(alpha):
        c[n + 1 :] = alpha
    return Poly(c)


@dataclass(frozen=True)
class FeasibilityProblem:
    m: int
    n: int
    radius: float
    geometry: str
    damping: tuple | None = None       # (eta, delta) for the segment geometry
    samples: tuple | None = None       # override; defaults are built per geometry

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"geometry must be one of {GEOMETRIES}")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if not 1 <= self.n <= self.m:
            raise ValueError("need 1 <= n <= m")


@dataclass(frozen=True)
class OptimalResult:
    m: int
    n: int
    geometry: str
    radius: float
    poly: Poly
    certificate: dict = field(default_factory=dict)
    bisection_width: float = 0.0


# ---------------------------------------------------------------------------
# disc geometry
# ---------------------------------------------------------------------------

def _circle_extrema(poly: Poly, r: float):
    """(angle, |P|) at all interior extrema of |P| on |z + r| = r, phi in (0, pi).

    |P(z(phi))|^2 is a cosine polynomial; its extrema are unit-circle roots of
    an explicit degree-2m polynomial built from the autocorrelation of
    Q(w) = P(r(w-1)).
    """
    c = poly.coeffs
    q = np.zeros(len(c))
    q[0] = c[0]
    cur = np.array([1.0])
    for k in range(1, len(c)):
        cur = np.convolve(cur, [-r, r])
        q[: len(cur)] += c[k] * cur
    mdeg = len(q) - 1
    cd = np.array([np.dot(q[d:], q[: len(q) - d]) for d in range(mdeg + 1)])
    pol = np.zeros(2 * mdeg + 1)
    for d in range(1, mdeg + 1):
        pol[mdeg + d] += d * cd[d]
        pol[mdeg - d] -= d * cd[d]
    pol = np.trim_zeros(pol[::-1], "f")
    out = []
    if len(pol) > 1:
        for w in np.roots(pol):
            if abs(abs(w) - 1.0) < 1e-6:
                ph = abs(float(np.angle(w)))
                if 1e-12 < ph < np.pi - 1e-12:
                    z = r * (np.exp(1j * ph) - 1.0)
                    out.append((ph, abs(poly(z))))
    out.append((np.pi, abs(poly(-2.0 * r))))
    return out


def disc_sup(poly: Poly, r: float) -> float:
    """Exact sup of |P| over the circle |z + r| = r (hence over the disc)."""
    peaks = _circle_extrema(poly, r)
    return max(1.0, max(v for _, v in peaks))   # |P(0)| = 1 is always attained


class _DiscFeasibility:
    """Funnel SOCP with peak exchange on the circle |z + r| = r."""

    EPS = 1e-8

    def __init__(self, m: int, n: int, n_angles: int = 512):
        self.m, self.n, self.d = m, n, m - n
        self.n_angles = n_angles
        self.custom_phi = None

    def _socp(self, r: float, phi: np.ndarray, solver: str):
        import cvxpy as cp

        m, n, d = self.m, self.n, self.d
        rho = np.maximum(1e-3, np.minimum(1.0, (phi / 0.5) ** 2))
        z = r * (np.exp(1j * phi) - 1.0)
        zs = z / (2.0 * r)
        basefun = Poly(base_coeffs(m, n))(z)
        A = np.stack([zs ** (n + 1 + k) for k in range(d)], axis=1)
        beta = cp.Variable(d)
        tau = cp.Variable()
        X = cp.vstack([basefun.real + A.real @ beta, basefun.imag + A.imag @ beta])
        prob = cp.Problem(cp.Minimize(tau), [cp.SOC(1.0 + tau * rho, X, axis=0)])
        try:
            # inaccurate statuses are fine: the exact sup check is the arbiter
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                if solver == "clarabel":
                    prob.solve(solver=cp.CLARABEL)
                else:
                    prob.solve(solver=cp.SCS, eps=1e-9, max_iters=100000)
        except Exception:
            return None, None
        if beta.value is None:
            return None, None
        alpha = beta.value / (2.0 * r) ** (n + 1 + np.arange(d))
        return float(tau.value), alpha

    def _solve_with_exchange(self, r: float, solver: str):
        if self.custom_phi is not None:
            phi0 = self.custom_phi
        else:
            phi0 = np.linspace(0.0, np.pi, self.n_angles + 1)[1:]
        extra: list = []
        alpha = None
        for _ in range(4):
            phi = np.sort(np.concatenate([phi0, np.array(extra)])) if extra else phi0
            tau, alpha = self._socp(r, phi, solver)
            if alpha is None:
                return None, None
            peaks = _circle_extrema(_full_poly(self.m, self.n, alpha), r)
            new = [p for p, v in peaks if v > 1.0 - 1e-3 and 0 < p < np.pi]
            fresh = [p for p in new if not extra or min(abs(p - e) for e in extra) > 1e-12]
            if not fresh:
                break
            extra.extend(fresh)
        return tau, alpha

    def probe(self, r: float):
        """(feasible, poly, sup).  Clarabel first; SCS for ambiguous verdicts."""
        if self.d == 0:
            poly = _full_poly(self.m, self.n, np.zeros(0))
            sup = disc_sup(poly, r)
            return sup <= 1.0 + self.EPS, poly, sup
        tau, alpha = self._solve_with_exchange(r, "clarabel")
        if alpha is not None:
            poly = _full_poly(self.m, self.n, alpha)
            sup = disc_sup(poly, r)
            if sup <= 1.0 + self.EPS:
                return True, poly, sup
            if sup - 1.0 >= 1e-4 or (tau is not None and tau > 1e-5):
                return False, poly, sup
        tau, alpha = self._solve_with_exchange(r, "scs")
        if alpha is None:
            return False, None, None
        poly = _full_poly(self.m, self.n, alpha)
        sup = disc_sup(poly, r)
        return sup <= 1.0 + self.EPS, poly, sup


# ---------------------------------------------------------------------------
# segment geometry
# ---------------------------------------------------------------------------

def _cheb_tail_basis(m: int, n: int):
    """Free-block basis u^{n+1} T_k(2u + 1) on u in [-1, 0], as coeff arrays."""
    d = m - n
    cols = []
    Tprev = np.array([1.0])
    Tcur = np.array([1.0, 2.0])
    for k in range(d):
        if k == 0:
            Tk = Tprev
        elif k == 1:
            Tk = Tcur
        else:
            Tk = np.zeros(k + 1)
            Tk[:k] += 2.0 * Tcur
            Tk[1 : k + 1] += 4.0 * Tcur
            Tk[: k - 1] -= Tprev
            Tprev, Tcur = Tcur, Tk
        c = np.zeros(n + 1 + k + 1)
        c[n + 1 :] = Tk
        cols.append(c)
    return cols


def _segment_grid(m: int, count: int | None = None) -> np.ndarray:
    """Chebyshev-extrema points of [-1, 0], origin excluded."""
    if count is None:
        count = max(30 * (m + 1), 24 * m * m)
    j = np.arange(count)
    u = -0.5 + 0.5 * np.cos(np.pi * j / (count - 1))
    return u[1:]


class _SegmentFeasibility:
    """Funnel LP on [-r, 0] (or damped cap on [-r, -delta])."""

    EPS = 1e-12

    def __init__(self, m: int, n: int, damping: tuple | None = None):
        self.m, self.n, self.d = m, n, m - n
        self.damping = damping
        self.custom_u = None
        self.cols = _cheb_tail_basis(m, n)

    def _lp(self, r: float):
        m, n, d = self.m, self.n, self.d
        u = self.custom_u if self.custom_u is not None else _segment_grid(m)
        if self.damping is not None:
            eta, delta = self.damping
            cap = 1.0 - eta
            if delta >= r:
                return None, None
            # grid on [-r, -delta]; scaled coordinate stays u in [-1, -delta/r]
            u = u[u <= -delta / r]
            if len(u) < 4 * d + 16:
                j = np.arange(4 * d + 16 + 2)
                span = 1.0 - delta / r
                u = -delta / r - span / 2 + (span / 2) * np.cos(np.pi * j / (len(j) - 1))
            rho = np.ones(len(u))
        else:
            cap = 1.0
            rho = np.maximum(1e-3, np.minimum(1.0, np.abs(u) / 0.02))
        xs = r * u
        basefun = Poly(base_coeffs(m, n))(xs)
        A = np.stack([Poly(c)(u) for c in self.cols], axis=1)
        A_ub = np.block([[A, -rho[:, None]], [-A, -rho[:, None]]])
        b_ub = np.concatenate([cap - basefun, cap + basefun])
        cvec = np.zeros(d + 1)
        cvec[-1] = 1.0
        for opts in ({}, {"presolve": False}):
            res = linprog(cvec, A_ub=A_ub, b_ub=b_ub,
                          bounds=[(None, None)] * d + [(-1000.0, 1e6)],
                          method="highs", options=opts)
            if res.status == 0:
                gamma, tau = res.x[:-1], res.x[-1]
                cu = np.zeros(m + 1)
                for g, c in zip(gamma, self.cols):
                    cu[: len(c)] += g * c
                alpha = cu[n + 1 :] / r ** np.arange(n + 1, m + 1)
                return tau, alpha
        return None, None

    def probe(self, r: float):
        if self.damping is not None:
            eta, delta = self.damping
            cap, lo_end = 1.0 - eta, -float(r)
            iv = Interval(lo_end, -delta) if delta > 0 else None
            if iv is None:
                return False, None, None     # |P(0)| = 1 > 1 - eta: empty
        else:
            cap = 1.0
            iv = Interval(-float(r), 0.0)
        if self.d == 0:
            poly = _full_poly(self.m, self.n, np.zeros(0))
            sup = poly.sup_norm(iv)
            return sup <= cap + self.EPS * max(1.0, cap), poly, sup
        tau, alpha = self._lp(r)
        if alpha is None:
            return False, None, None
        poly = _full_poly(self.m, self.n, alpha)
        sup = poly.sup_norm(iv)
        return sup <= cap + self.EPS * max(1.0, cap), poly, sup


# ---------------------------------------------------------------------------
# absolute monotonicity (threshold factor) geometry
# ---------------------------------------------------------------------------

def _abs_monotone_lp(m: int, n: int, r: float):
    """max s  s.t.  P^{(j)}(-r) >= s * sigma_j for j = 0..m (scaled rows).

    Row j is multiplied by r^j / j!, which keeps every entry at binomial
    scale; the free block is scaled by beta_k = alpha_k r^{n+1+k}.
    """
    d = m - n
    A = np.zeros((m + 1, d))
    b = np.zeros(m + 1)
    for j in range(m + 1):
        for i in range(j, n + 1):
            b[j] += comb(i, j) * (-1.0) ** (i - j) * r**i / factorial(i)
        for k in range(d):
            p = n + 1 + k
            if p >= j:
                A[j, k] = comb(p, j) * (-1.0) ** (p - j)
    sig = np.maximum(1.0, np.abs(A).max(axis=1, initial=0.0) + np.abs(b))
    cvec = np.zeros(d + 1)
    cvec[-1] = -1.0
    A_ub = np.hstack([-A, sig[:, None]])
    res = linprog(cvec, A_ub=A_ub, b_ub=b,
                  bounds=[(None, None)] * d + [(None, 1.0)], method="highs")
    if res.status != 0:
        return None, None
    s = res.x[-1]
    alpha = res.x[:-1] / r ** (n + 1 + np.arange(d))
    return s, alpha


class _AbsMonotoneFeasibility:
    EPS = 1e-11

    def __init__(self, m: int, n: int):
        self.m, self.n, self.d = m, n, m - n

    def probe(self, r: float):
        if self.d == 0:
            poly = _full_poly(self.m, self.n, np.zeros(0))
            derivs = _derivatives_at(poly, -r)
            return bool(np.all(derivs >= -self.EPS)), poly, float(derivs.min())
        s, alpha = _abs_monotone_lp(self.m, self.n, r)
        if s is None:
            return False, None, None
        poly = _full_poly(self.m, self.n, alpha)
        return s >= -self.EPS, poly, s


def _derivatives_at(poly: Poly, x: float) -> np.ndarray:
    out = []
    p = poly
    for _ in range(poly.degree_bound + 1):
        out.append(p(x))
        p = p.derivative(1)
    return np.array(out)


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------

def _machine(fp_geometry: str, m: int, n: int, damping):
    if fp_geometry == "disc":
        return _DiscFeasibility(m, n)
    if fp_geometry == "segment":
        return _SegmentFeasibility(m, n, damping)
    return _AbsMonotoneFeasibility(m, n)


def feasible(fp: FeasibilityProblem):
    """Feasibility flag and the achieving polynomial for one radius.

    With fp.samples unset, geometry defaults are used (half-circle angles for
    the disc, Chebyshev-clustered points of [-r, 0] for the segment); custom
    samples override the solve grid, never the exact-sup verification.
    """
    machine = _machine(fp.geometry, fp.m, fp.n, fp.damping)
    if fp.samples is not None:
        if fp.geometry == "disc":
            machine.n_angles = None
            machine.custom_phi = np.asarray(fp.samples, dtype=float)
        elif fp.geometry == "segment":
            machine.custom_u = np.asarray(fp.samples, dtype=float) / fp.radius
    ok, poly, _ = machine.probe(fp.radius)
    if poly is None:
        raise SolverStall(f"feasibility solve failed at radius {fp.radius}")
    return ok, poly


def _brackets(m: int, n: int, geometry: str, damping) -> tuple:
    if geometry == "disc":
        hi = _bounds.absolute_upper(m, n).value
        lo = min(0.5, 0.5 * hi)
        return lo, hi
    if geometry == "segment":
        if damping is not None:
            eta, delta = damping
            hi = _bounds.damped_parabolic_upper(m, n, eta, delta).value
            return None, hi          # lower end found by scanning
        return 0.999 * _bounds.parabolic_lower(m, n).value, _bounds.parabolic_upper(m, n).value
    cap = m - n + 1.0
    return min(0.25, cap / 2), cap + 0.5


def _verification(machine, geometry, poly, radius) -> dict:
    """Dense-grid certificate data (10x the solve grid)."""
    if geometry == "disc":
        phi = np.linspace(0.0, np.pi, 5121)
        z = radius * (np.exp(1j * phi) - 1.0)
        vals = np.abs(poly(z))
        return {"verified_max": float(max(vals.max(), disc_sup(poly, radius))),
                "verification_points": len(phi)}
    if geometry == "segment":
        count = 10 * max(30 * (machine.m + 1), 12 * machine.m**2)
        if machine.damping is not None:
            eta, delta = machine.damping
            xs = np.linspace(-radius, -delta, count)
            cap_iv = Interval(-radius, -delta)
        else:
            xs = np.linspace(-radius, 0.0, count)
            cap_iv = Interval(-radius, 0.0)
        vals = np.abs(poly(xs))
        return {"verified_max": float(max(vals.max(), poly.sup_norm(cap_iv))),
                "verification_points": count}
    derivs = _derivatives_at(poly, -radius)
    return {"min_scaled_derivative": float(derivs.min()), "verification_points": len(derivs)}


@lru_cache(maxsize=None)
def _optimal_radius_cached(m: int, n: int, geometry: str, damping, scale: float):
    machine = _machine(geometry, m, n, damping)
    lo, hi = _brackets(m, n, geometry, damping)
    ok, poly, _ = machine.probe(hi)
    if ok:
        cert = _verification(machine, geometry, poly, hi)
        return OptimalResult(m, n, geometry, float(hi), poly,
                             certificate=cert, bisection_width=0.0)
    if lo is None:   # damped segment: scan upward for a feasible start
        eta, delta = damping
        lo = max(2.0 * delta, 1e-3)
        for _ in range(60):
            ok, cand, _ = machine.probe(lo)
            if ok:
                poly = cand
                break
            lo *= 1.5
            if lo >= hi:
                raise SolverStall("no feasible damped radius below the bound")
        else:
            raise SolverStall("no feasible damped radius found")
    else:
        for _ in range(4):
            ok, cand, _ = machine.probe(lo)
            if ok:
                poly = cand
                break
            lo *= 0.5
        else:
            raise SolverStall(f"lower bracket {lo} infeasible for ({m},{n},{geometry})")
    width = {"disc": 3e-6, "segment": 1e-5, "abs_monotone": 5e-5}[geometry] * scale
    target = width * max(1.0, hi)
    best = poly
    while hi - lo > target:
        mid = 0.5 * (lo + hi)
        ok, cand, _ = machine.probe(mid)
        if ok and cand is not None:
            lo, best = mid, cand
        else:
            hi = mid
    cert = _verification(machine, geometry, best, lo)
    if geometry == "abs_monotone":
        cert["nonneg_basis_coeffs"] = _nonneg_basis_certificate(best, lo)
    else:
        tol = 1e-4 if geometry == "disc" else 1e-2
        cert["touch_points"] = _touch_from_poly(best, lo, geometry, damping, tol)
    return OptimalResult(m, n, geometry, float(lo), best,
                         certificate=cert, bisection_width=float(hi - lo))


def optimal_radius(m: int, n: int, geometry: str, damping=None) -> OptimalResult:
    """Optimal radius, optimizing polynomial and certificate for one cell.

    Brackets start from the theorem bounds; a feasible upper bracket means
    the bound is sharp and is returned as-is.  Results are cached.
    """
    if not 1 <= n <= m <= 15:
        raise ValueError("supported range is 1 <= n <= m <= 15")
    if geometry not in GEOMETRIES:
        raise ValueError(f"geometry must be one of {GEOMETRIES}")
    damping_key = tuple(damping) if damping is not None else None
    if damping_key is not None and geometry != "segment":
        raise ValueError("damping applies to the segment geometry")
    return _optimal_radius_cached(m, n, geometry, damping_key, precision_scale())


def _touch_from_poly(poly, radius, geometry, damping, tol):
    if geometry == "disc":
        pts = []
        for ph, v in _circle_extrema(poly, radius):
            if v >= 1.0 - tol:
                pts.append(complex(radius * (np.exp(1j * ph) - 1.0)))
        pts.append(0j)
        return pts
    lo_end = -radius
    hi_end = -damping[1] if damping else 0.0
    cap = 1.0 - damping[0] if damping else 1.0
    iv = Interval(lo_end, hi_end) if hi_end > lo_end else None
    pts = []
    for x in ([iv.lo, iv.hi] + poly.real_extrema(iv)) if iv else []:
        if abs(poly(x)) >= cap - tol:
            pts.append(float(x))
    return sorted(set(pts))


def touch_points(res: OptimalResult, tol: float = 1e-4) -> list:
    """Contact loci of the optimal disc polynomial on its circle.

    Verification-grid points with |P| >= 1 - tol are clustered by arc
    distance (conjugate pairs included); each cluster reports its maximal
    point, ties broken toward the origin.
    """
    if res.geometry != "disc":
        raise ValueError("touch_points applies to disc results")
    r = res.radius
    phi = np.linspace(-np.pi, np.pi, 10241)
    z = r * (np.exp(1j * phi) - 1.0)
    vals = np.abs(res.poly(z))
    mask = vals >= 1.0 - tol
    if not mask.any():
        return []
    idx = np.where(mask)[0]
    # cluster contiguous runs, wrapping across -pi/pi
    breaks = np.where(np.diff(idx) > 1)[0]
    runs = np.split(idx, breaks + 1)
    if len(runs) > 1 and idx[0] == 0 and idx[-1] == len(phi) - 1:
        runs[0] = np.concatenate([runs[-1], runs[0]])
        runs.pop()
    zero_idx = int(np.argmin(np.abs(phi)))
    out = []
    for run in runs:
        if zero_idx in run:
            # the contact at the origin is structural (P(0) = 1 exactly)
            out.append(0j)
            continue
        top = vals[run].max()
        near = run[vals[run] >= top - 1e-12]
        pick = near[np.argmin(np.abs(phi[near]))]
        out.append(complex(z[pick]))
    return out


def _nonneg_basis_certificate(poly: Poly, radius: float) -> list:
    """Coefficients of P in the basis (1 + z/R)^k, k = 0..m.

    Nonnegative (within solver tolerance) iff P is absolutely monotonic on
    [-R, 0]; they sum to P(0) = 1.
    """
    mdeg = poly.degree_bound
    # a_k = P^{(k)}(-R) R^k / k!
    out = []
    p = poly
    for k in range(mdeg + 1):
        out.append(float(p(-radius)) * radius**k / factorial(k))
        p = p.derivative(1)
    return out


def threshold_factor(m: int, n: int) -> OptimalResult:
    """Optimal threshold factor (largest absolute-monotonicity radius)."""
    if not m > n >= 1:
        raise ValueError("need m > n >= 1")
    return optimal_radius(m, n, "abs_monotone")
