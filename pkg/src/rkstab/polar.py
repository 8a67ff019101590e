"""Polar forms (blossoms) of polynomials viewed at a declared degree.

The blossom of P at declared degree m is the unique symmetric multi-affine
function of m arguments agreeing with P on the diagonal.  It is evaluated
through elementary symmetric functions; repeated-argument specializations
are expanded in closed form to avoid cancellation at larger m.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .poly_core import Poly

__all__ = ["elementary_symmetric", "Blossom"]


def elementary_symmetric(values, upto: int):
    """sigma_0..sigma_upto of the given values, one-pass stable recurrence."""
    values = list(values)
    if upto > len(values):
        raise ValueError("upto exceeds the number of values")
    sig = np.zeros(upto + 1, dtype=complex)
    sig[0] = 1.0
    count = 0
    for u in values:
        count += 1
        top = min(count, upto)
        sig[1 : top + 1] += u * sig[0:top]
    return sig


class Blossom:
    """Blossom of `base` at declared degree m >= exact degree."""

    def __init__(self, base: Poly, m: int):
        if m < base.exact_degree:
            raise ValueError("declared degree below exact degree")
        self.base = base
        self.m = m

    def __call__(self, args):
        """Polar form at exactly m arguments."""
        args = list(args)
        if len(args) != self.m:
            raise ValueError(f"blossom of degree {self.m} needs exactly {self.m} arguments")
        sig = elementary_symmetric(args, min(self.m, self.base.degree_bound))
        total = 0.0 + 0.0j
        for k, a in enumerate(self.base.coeffs[: len(sig)]):
            if a:
                total += a * sig[k] / comb(self.m, k)
        if all(isinstance(u, (int, float)) or (isinstance(u, complex) and u.imag == 0) for u in args):
            return total.real
        return complex(total)

    def repeat(self, z_scale: float, count: int) -> Poly:
        """The polynomial z -> blossom(z_scale z repeated `count`, 0 repeated m-count).

        Coefficient of z^l is a_l C(count,l)/C(m,l) z_scale^l, from expanding
        the elementary symmetric functions on repeated arguments.
        """
        if not 0 <= count <= self.m:
            raise ValueError("count must lie in [0, m]")
        a = self.base.coeffs
        top = min(count, self.base.degree_bound)
        out = np.zeros(count + 1)
        for ell in range(top + 1):
            out[ell] = a[ell] * comb(count, ell) / comb(self.m, ell) * z_scale**ell
        return Poly(out)
