"""Single-variable polynomial and truncated power-series arithmetic.

Series arithmetic is closed at a fixed order: products drop everything above
it. Coefficients are binary64 throughout; the rising-factorial polynomials
have nonnegative integer coefficients, which stay exact up to the float
integer range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in y, coeffs[k] multiplying y**k."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            object.__setattr__(self, "coeffs", (0.0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n)
        a[: len(self.coeffs)] += self.coeffs
        a[: len(other.coeffs)] += other.coeffs
        return Polynomial(tuple(a))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(tuple(np.convolve(self.coeffs, other.coeffs)))

    def __call__(self, y: float) -> float:
        acc = 0.0
        for ck in reversed(self.coeffs):
            acc = acc * y + ck
        return acc


def pochhammer_polynomial(k: int) -> Polynomial:
    """(y+1)_k = (y+1)(y+2)...(y+k) expanded in y; k = 0 gives 1."""
    if k < 0:
        raise ParameterError("pochhammer_polynomial needs k >= 0")
    p = Polynomial((1.0,))
    for j in range(1, k + 1):
        p = p * Polynomial((float(j), 1.0))
    return p


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in y truncated at a fixed order (inclusive).

    coeffs has length order+1. Arithmetic keeps the order of the left
    operand; mixing orders is a bug we refuse loudly.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ParameterError("TruncatedSeries needs at least one coefficient")

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((0.0,) * (order + 1))

    @classmethod
    def from_coeffs(cls, coeffs, order: int) -> "TruncatedSeries":
        a = np.zeros(order + 1)
        src = np.asarray(coeffs, dtype=float)[: order + 1]
        a[: len(src)] = src
        return cls(tuple(a))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise ParameterError("series orders differ: %d vs %d" % (self.order, other.order))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(np.add(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(np.subtract(self.coeffs, other.coeffs)))

    def scale(self, s: float) -> "TruncatedSeries":
        return TruncatedSeries(tuple(s * np.asarray(self.coeffs)))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        full = np.convolve(self.coeffs, other.coeffs)
        return TruncatedSeries(tuple(full[: self.order + 1]))

    def shift_up(self, powers: int) -> "TruncatedSeries":
        """Multiply by y**powers, keeping the order."""
        a = np.zeros(self.order + 1)
        a[powers:] = self.coeffs[: self.order + 1 - powers]
        return TruncatedSeries(tuple(a))

    def deriv(self) -> "TruncatedSeries":
        c = self.coeffs
        a = [k * c[k] for k in range(1, len(c))] + [0.0]
        return TruncatedSeries(tuple(a))

    def exp(self) -> "TruncatedSeries":
        """exp of the series via the E' = S'E recurrence."""
        import math

        n = self.order
        s = self.coeffs
        out = np.zeros(n + 1)
        out[0] = math.exp(s[0])
        for m in range(1, n + 1):
            acc = 0.0
            for j in range(1, m + 1):
                acc += j * s[j] * out[m - j]
            out[m] = acc / m
        return TruncatedSeries(tuple(out))

    def __call__(self, y: float) -> float:
        acc = 0.0
        for ck in reversed(self.coeffs):
            acc = acc * y + ck
        return acc
