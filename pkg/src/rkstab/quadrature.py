"""Gaussian quadrature for the measure (m / x^{m+1}) dx on [1, infinity).

Moments are m/(m-k), finite for k < m.  Recurrence coefficients come from
the Chebyshev moment algorithm and nodes/weights from the symmetric
tridiagonal (Jacobi matrix) eigenproblem.  The Hankel determinant that
defines the orthogonal polynomials is not used computationally; monomial
moments make it hopeless in floats beyond a handful of points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = ["QuadRule", "DegenerateMoments", "moments", "gauss_rule", "lambda_max", "P_CAP"]

P_CAP = 6   # monomial moments are too ill-conditioned past this


class DegenerateMoments(Exception):
    """Moment matrix numerically singular: p too large for this m in floats."""


@dataclass(frozen=True)
class QuadRule:
    m: int
    p: int
    nodes: tuple
    weights: tuple

    def integrate_poly_values(self, values) -> float:
        return float(np.dot(self.weights, values))


def moments(m: int, upto: int) -> np.ndarray:
    """Moments M_k = m / (m - k), k = 0..upto; divergent for k >= m."""
    if upto >= m:
        raise ValueError(f"moment {upto} of the order-{m} measure diverges")
    return np.array([m / (m - k) for k in range(upto + 1)])


def _recurrence_from_moments(mu: np.ndarray, p: int):
    """Chebyshev algorithm: moments mu_0..mu_{2p-1} -> Jacobi (a, b)."""
    a = np.zeros(p)
    b = np.zeros(p)
    sig_prev = np.zeros(2 * p)
    sig_cur = mu.astype(float).copy()
    a[0] = mu[1] / mu[0]
    b[0] = mu[0]
    for k in range(1, p):
        sig_next = np.zeros(2 * p)
        for ell in range(k, 2 * p - k):
            sig_next[ell] = (
                sig_cur[ell + 1] - a[k - 1] * sig_cur[ell] - b[k - 1] * sig_prev[ell]
            )
        if not np.isfinite(sig_next[k]) or sig_next[k] <= 0 or sig_cur[k - 1] <= 0:
            raise DegenerateMoments(f"moment problem degenerate at step {k}")
        a[k] = sig_next[k + 1] / sig_next[k] - sig_cur[k] / sig_cur[k - 1]
        b[k] = sig_next[k] / sig_cur[k - 1]
        sig_prev, sig_cur = sig_cur, sig_next
    return a, b


def gauss_rule(m: int, p: int) -> QuadRule:
    """p-point Gaussian rule for (m / x^{m+1}) dx on [1, inf); needs 2p-1 < m."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if 2 * p - 1 >= m:
        raise ValueError(f"rule needs 2p-1 < m (got p={p}, m={m})")
    if p > P_CAP:
        raise DegenerateMoments(f"p={p} beyond supported cap {P_CAP}")
    mu = moments(m, 2 * p - 1)
    if p == 1:
        return QuadRule(m, 1, (mu[1] / mu[0],), (mu[0],))
    a, b = _recurrence_from_moments(mu, p)
    if np.any(b[1:] <= 0):
        raise DegenerateMoments("nonpositive recurrence coefficient")
    nodes, vecs = eigh_tridiagonal(a, np.sqrt(b[1:]))
    weights = b[0] * vecs[0, :] ** 2
    order = np.argsort(nodes)
    return QuadRule(m, p, tuple(nodes[order]), tuple(weights[order]))


def lambda_max(m: int, p: int) -> float:
    """Largest node of the p-point rule (largest zero of the degree-p
    orthogonal polynomial for this measure)."""
    return max(gauss_rule(m, p).nodes)
