"""Real polynomials in the monomial basis, intervals, and Bernstein forms.

Everything downstream (blossoms, bound calculators, feasibility solvers)
works on these carriers.  Basis conversions go through exact rational
arithmetic so that degree elevation and round trips do not leak float noise
into the high-order coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

__all__ = ["Poly", "Interval", "BernsteinForm", "to_bernstein", "from_bernstein"]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo


class Poly:
    """Polynomial sum c_k x^k with a declared degree bound.

    Trailing zero coefficients are allowed; `degree_bound` is the length of
    the coefficient vector minus one, not the exact degree.  Instances are
    immutable and safe to share across threads.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        arr = np.asarray(coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "_coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree_bound(self) -> int:
        return len(self._coeffs) - 1

    @property
    def exact_degree(self) -> int:
        nz = np.nonzero(self._coeffs)[0]
        return int(nz[-1]) if len(nz) else 0

    def __call__(self, x):
        """Horner evaluation; complex input yields complex output."""
        x = np.asarray(x)
        scalar = x.ndim == 0
        out = np.zeros_like(x, dtype=complex if np.iscomplexobj(x) else float)
        for c in self._coeffs[::-1]:
            out = out * x + c
        if scalar:
            return complex(out) if np.iscomplexobj(x) else float(out)
        return out

    def derivative(self, k: int = 1) -> "Poly":
        """Exact k-th derivative; degree bound shrinks by k (floor 0)."""
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        c = self._coeffs
        for _ in range(k):
            if len(c) == 1:
                c = np.zeros(1)
                break
            c = c[1:] * np.arange(1, len(c))
        return Poly(c)

    def elevated(self, degree_bound: int) -> "Poly":
        """Same polynomial with trailing zeros up to `degree_bound`."""
        if degree_bound < self.degree_bound:
            raise ValueError("cannot lower the degree bound")
        out = np.zeros(degree_bound + 1)
        out[: len(self._coeffs)] = self._coeffs
        return Poly(out)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self._coeffs, other._coeffs
        out = np.zeros(max(len(a), len(b)))
        out[: len(a)] += a
        out[: len(b)] += b
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (other * -1.0)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(np.convolve(self._coeffs, other._coeffs))
        return Poly(self._coeffs * float(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Poly({list(self._coeffs)})"

    def real_extrema(self, iv: Interval) -> list:
        """Real critical points inside `iv`, via companion roots of p'."""
        dc = np.polynomial.polynomial.polyder(self._coeffs)
        dc = np.trim_zeros(dc, "b")
        if len(dc) <= 1:
            return []
        out = []
        for z in np.polynomial.polynomial.polyroots(dc):
            if abs(z.imag) < 1e-8 * max(1.0, abs(z.real)):
                x = float(z.real)
                if iv.lo - 1e-12 <= x <= iv.hi + 1e-12:
                    out.append(min(max(x, iv.lo), iv.hi))
        return sorted(out)

    def sup_norm(self, iv: Interval) -> float:
        """Exact sup of |p| on `iv` (endpoint and critical-point values)."""
        cand = [iv.lo, iv.hi] + self.real_extrema(iv)
        return max(abs(self(x)) for x in cand)


@dataclass(frozen=True)
class BernsteinForm:
    """Control ordinates q_0..q_N of a polynomial over (a, b).

    Forms produced by `to_bernstein` also carry their ordinates as exact
    rationals so that converting back to the monomial basis is lossless;
    the float tuple is the public view either way.
    """

    a: float
    b: float
    ordinates: tuple
    exact_ordinates: tuple | None = None

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("Bernstein interval must have a != b")
        object.__setattr__(self, "ordinates", tuple(float(q) for q in self.ordinates))

    @property
    def degree(self) -> int:
        return len(self.ordinates) - 1

    def abscissae(self) -> np.ndarray:
        """Uniform control-point abscissae a + i (b - a) / N."""
        N = self.degree
        return self.a + (self.b - self.a) * np.arange(N + 1) / N

    def __call__(self, x):
        """de Casteljau evaluation."""
        t = (np.asarray(x, dtype=float) - self.a) / (self.b - self.a)
        beta = [np.broadcast_to(np.asarray(q), t.shape).astype(float) for q in self.ordinates]
        n = len(beta)
        for r in range(1, n):
            beta = [(1 - t) * beta[i] + t * beta[i + 1] for i in range(n - r)]
        out = beta[0]
        return float(out) if np.ndim(x) == 0 else out


def _exact_elementary_symmetric(values, upto):
    sig = [Fraction(1)] + [Fraction(0)] * upto
    count = 0
    for v in values:
        count += 1
        for k in range(min(count, upto), 0, -1):
            sig[k] = sig[k] + v * sig[k - 1]
    return sig


def to_bernstein(p: Poly, iv: Interval, N: int) -> BernsteinForm:
    """Control ordinates of `p` over `iv` at degree `N` (elevation if N > deg).

    Ordinates are blossom values at (a repeated N-i times, b repeated i
    times), evaluated in exact rational arithmetic.
    """
    if N < p.exact_degree:
        raise ValueError(f"N={N} is below the exact degree {p.exact_degree}")
    a, b = Fraction(iv.lo), Fraction(iv.hi)
    cfr = [Fraction(c) for c in p.coeffs[: p.exact_degree + 1]]
    ords = []
    for i in range(N + 1):
        sig = _exact_elementary_symmetric([a] * (N - i) + [b] * i, len(cfr) - 1)
        ords.append(sum(ck * sig[k] / comb(N, k) for k, ck in enumerate(cfr)))
    return BernsteinForm(iv.lo, iv.hi, tuple(float(q) for q in ords),
                         exact_ordinates=tuple(ords))


def from_bernstein(bf: BernsteinForm) -> Poly:
    """Monomial coefficients of a Bernstein form (exact expansion)."""
    N = bf.degree
    a, b = Fraction(bf.a), Fraction(bf.b)
    w = b - a
    source = bf.exact_ordinates if bf.exact_ordinates is not None else bf.ordinates
    # expand in s = (x - a) / (b - a), then compose the affine change exactly
    cs = [Fraction(0)] * (N + 1)
    for i, q in enumerate(source):
        qf = Fraction(q) * comb(N, i)
        # s^i (1-s)^{N-i}
        for j in range(N - i + 1):
            cs[i + j] += qf * comb(N - i, j) * (-1) ** j
    # x = a + w s  =>  s = (x - a) / w; accumulate powers of (x - a) / w
    cx = [Fraction(0)] * (N + 1)
    for k, ck in enumerate(cs):
        if ck == 0:
            continue
        scale = ck / w**k
        # (x - a)^k binomial expansion
        for j in range(k + 1):
            cx[j] += scale * comb(k, j) * (-a) ** (k - j)
    return Poly([float(c) for c in cx])
