"""Truncated Taylor series in one formal variable with complex coefficients.

These realize the generating variable computationally: connector expansions
and the Ohno generating function are degree-D polynomials whose coefficient e
collects the shift-m = e layer.  Mixed-degree arithmetic truncates to the
smaller degree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import log_gamma, polygamma

DEFAULT_DEGREE = 8
MAX_DEGREE = 16


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[complex, ...]  # coeffs[e] = coefficient of x^e, length degree+1

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise DomainError("series needs at least the constant coefficient")
        if len(self.coeffs) - 1 > MAX_DEGREE:
            raise DomainError(f"degree {len(self.coeffs) - 1} exceeds cap {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value: complex, degree: int = DEFAULT_DEGREE) -> "TruncatedSeries":
        return cls((complex(value),) + (0j,) * degree)

    @classmethod
    def variable(cls, degree: int = DEFAULT_DEGREE) -> "TruncatedSeries":
        if degree < 1:
            raise DomainError("the variable needs degree >= 1")
        return cls((0j, 1 + 0j) + (0j,) * (degree - 1))

    def __add__(self, other: "TruncatedSeries | complex") -> "TruncatedSeries":
        other = _coerce(other, self.degree)
        d = min(self.degree, other.degree)
        return TruncatedSeries(tuple(self.coeffs[e] + other.coeffs[e] for e in range(d + 1)))

    def __sub__(self, other: "TruncatedSeries | complex") -> "TruncatedSeries":
        other = _coerce(other, self.degree)
        d = min(self.degree, other.degree)
        return TruncatedSeries(tuple(self.coeffs[e] - other.coeffs[e] for e in range(d + 1)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "TruncatedSeries | complex") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            z = complex(other)
            return TruncatedSeries(tuple(c * z for c in self.coeffs))
        d = min(self.degree, other.degree)
        out = [0j] * (d + 1)
        for e in range(d + 1):
            out[e] = sum(self.coeffs[a] * other.coeffs[e - a] for a in range(e + 1))
        return TruncatedSeries(tuple(out))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other: complex) -> "TruncatedSeries":
        return (-self) + other

    def evaluate(self, x: complex) -> complex:
        """Horner evaluation at a numeric point."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _coerce(value: "TruncatedSeries | complex", degree: int) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.constant(complex(value), degree)


def inv(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    a = s.coeffs
    if a[0] == 0:
        raise DomainError("cannot invert a series with zero constant term")
    b = [1.0 / a[0]] + [0j] * s.degree
    for n in range(1, s.degree + 1):
        b[n] = -b[0] * sum(a[k] * b[n - k] for k in range(1, n + 1))
    return TruncatedSeries(tuple(b))


def exp(s: TruncatedSeries) -> TruncatedSeries:
    """Truncated exponential via the derivative recurrence."""
    a = s.coeffs
    b = [cmath.exp(a[0])] + [0j] * s.degree
    for n in range(1, s.degree + 1):
        b[n] = sum(k * a[k] * b[n - k] for k in range(1, n + 1)) / n
    return TruncatedSeries(tuple(b))


def log(s: TruncatedSeries) -> TruncatedSeries:
    """Truncated logarithm; the constant term must be nonzero."""
    a = s.coeffs
    if a[0] == 0:
        raise DomainError("cannot take log of a series with zero constant term")
    b = [cmath.log(a[0])] + [0j] * s.degree
    for n in range(1, s.degree + 1):
        b[n] = (n * a[n] - sum(k * b[k] * a[n - k] for k in range(1, n))) / (n * a[0])
    return TruncatedSeries(tuple(b))


def reciprocal_linear(c: complex, degree: int) -> TruncatedSeries:
    """Expansion of 1/(c - x): coefficient e is c^{-(e+1)}."""
    c = complex(c)
    if c == 0:
        raise DomainError("reciprocal_linear needs c != 0")
    coeffs = []
    p = 1.0 / c
    for _ in range(degree + 1):
        coeffs.append(p)
        p /= c
    return TruncatedSeries(tuple(coeffs))


def log_gamma_series(c: complex, degree: int) -> TruncatedSeries:
    """Expansion of log Gamma(c - x) around x = 0 for Re c > 0.

    Coefficient j is -psi^{(j-1)}(c) / j! for j >= 1; coefficient 0 is
    log_gamma(c).
    """
    coeffs = [log_gamma(c)]
    sign = -1.0
    for j in range(1, degree + 1):
        coeffs.append(sign * polygamma(j - 1, c) / math.factorial(j))
        sign = -sign
    return TruncatedSeries(tuple(coeffs))


def connector_series(m: int, n: int, alpha: complex, degree: int) -> TruncatedSeries:
    """x-expansion of the connector gamma ratio, symmetric in (m, n)."""
    if m < -1 or n < -1:
        raise DomainError(f"connector_series arguments must be >= -1, got m={m}, n={n}")
    num = log_gamma_series(m + alpha + 1, degree) + log_gamma_series(n + alpha + 1, degree)
    return exp(num - log_gamma_series(m + n + 2 * alpha + 1, degree))
