"""Complex special functions for the right half plane.

Everything here assumes Re z > 0, which every argument in this package
satisfies.  Gamma ratios are always combined in log space so that values at
large integer offsets (up to ~1e7) never overflow.
"""

from __future__ import annotations

import cmath
import math
import re

from .errors import DomainError

# Bernoulli numbers B_2 .. B_30 (even indices only).
BERNOULLI_EVEN: tuple[float, ...] = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT_RADIUS = 20.0


def _require_right_half_plane(z: complex, what: str) -> complex:
    z = complex(z)
    if not z.real > 0:
        raise DomainError(f"{what} requires Re z > 0, got {z}")
    return z


def log_gamma(z: complex) -> complex:
    """Principal log-gamma for Re z > 0.

    Arguments are shifted up by the recurrence until |z| >= 20, then the
    Stirling asymptotic series with Bernoulli terms through B_30 is applied.
    """
    z = _require_right_half_plane(z, "log_gamma")
    shift = 0j
    while abs(z) < _SHIFT_RADIUS:
        shift -= cmath.log(z)
        z += 1
    total = (z - 0.5) * cmath.log(z) - z + _HALF_LOG_TWO_PI
    zinv2 = 1.0 / (z * z)
    term = 1.0 / z
    for k, b2k in enumerate(BERNOULLI_EVEN, start=1):
        total += b2k / (2 * k * (2 * k - 1)) * term
        term *= zinv2
    return total + shift


def polygamma(j: int, z: complex) -> complex:
    """psi^{(j)}(z) for integer j >= 0 and Re z > 0.

    Same shift-then-asymptotic scheme as log_gamma; accurate for the orders
    needed by series expansions (j <= 2 * max degree).
    """
    if j < 0:
        raise DomainError(f"polygamma order must be >= 0, got {j}")
    z = _require_right_half_plane(z, "polygamma")
    # The asymptotic series needs larger |z| for higher derivative orders.
    radius = _SHIFT_RADIUS + j
    shift = 0j
    sign = -1.0 if j % 2 else 1.0  # (-1)^j
    fact_j = math.factorial(j)
    while abs(z) < radius:
        shift -= sign * fact_j * z ** (-(j + 1))
        z += 1
    if j == 0:
        total = cmath.log(z) - 0.5 / z
        term = 1.0 / (z * z)
        for k, b2k in enumerate(BERNOULLI_EVEN, start=1):
            total -= b2k / (2 * k) * term
            term /= z * z
    else:
        # d^j/dz^j of the psi asymptotic series, term by term
        total = -sign * (
            math.factorial(j - 1) * z ** (-j) + 0.5 * fact_j * z ** (-(j + 1))
        )
        for k, b2k in enumerate(BERNOULLI_EVEN, start=1):
            coeff = b2k / (2 * k) * _rising_factorial_int(2 * k, j)
            total -= sign * coeff * z ** (-(2 * k + j))
    return total + shift


def _rising_factorial_int(a: int, n: int) -> float:
    """(a)_n for integers, as a float."""
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def pochhammer_ratio(alpha: complex, m: int) -> complex:
    """(alpha)_m / m! for Re alpha > 0 and m >= 0."""
    alpha = _require_right_half_plane(alpha, "pochhammer_ratio")
    if m < 0:
        raise DomainError(f"pochhammer_ratio needs m >= 0, got {m}")
    if m <= 32:
        out = 1.0 + 0j
        for i in range(m):
            out *= (alpha + i) / (i + 1)
        return out
    return cmath.exp(log_gamma(alpha + m) - log_gamma(alpha) - log_gamma(m + 1.0))


def connector(m: int, n: int, alpha: complex, x: complex = 0j) -> complex:
    """Gamma(m+a-x+1) Gamma(n+a-x+1) / Gamma(m+n+2a-x+1), symmetric in (m, n).

    The sentinel value -1 is allowed for m or n (the empty-chain boundary).
    """
    alpha = _require_right_half_plane(alpha, "connector")
    a = alpha - x
    if not a.real > 0:
        raise DomainError(f"connector requires Re(alpha - x) > 0, got {a}")
    if m < -1 or n < -1:
        raise DomainError(f"connector arguments must be >= -1, got m={m}, n={n}")
    return cmath.exp(
        log_gamma(m + a + 1) + log_gamma(n + a + 1) - log_gamma(m + n + 2 * alpha - x + 1)
    )


def gauss_ratio(a: complex, b: complex, c: complex) -> complex:
    """Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).

    Closed form of the unit-argument hypergeometric sum
    sum_k (a)_k (b)_k / ((c)_k k!).
    """
    a, b, c = complex(a), complex(b), complex(c)
    for name, z in (("c", c), ("c-a-b", c - a - b), ("c-a", c - a), ("c-b", c - b)):
        if not z.real > 0:
            raise DomainError(f"gauss_ratio requires Re({name}) > 0, got {z}")
    return cmath.exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b))


_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?$"
)


def parse_complex(text: str) -> complex:
    """Parse "a", "a+bi", or "a-bi" into a complex number."""
    m = _COMPLEX_RE.match(text.strip())
    if m is None:
        raise DomainError(f"bad complex literal {text!r}: expected 'a', 'a+bi', or 'a-bi'")
    real = float(m.group("re"))
    imag = float(m.group("im")) if m.group("im") else 0.0
    return complex(real, imag)


def format_complex(z: complex) -> str:
    """Inverse of parse_complex."""
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"
