"""Numerical evaluation of the zeta-type series.

All evaluators share one prefix-sum dynamic program over the chain variables:
S_1(m) = sum of the first weight over m_1 < m, S_j(m) folds S_{j-1} against the
j-th weight, and the outer variable is reduced last.  Sums are Kahan
compensated in ascending order, so results are reproducible bit for bit.

Truncated sums are completed with a power-law tail fitted to the last outer
terms; the reported tail_estimate is the cruder a-posteriori proxy
N * |last term| / (sigma - 1), which upper-bounds what the completion already
removed and is what verification tolerances are scaled by.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._sums import kahan_cumsum_exclusive, kahan_cumsum_exclusive_columns, kahan_sum
from .errors import ConvergenceError, DomainError
from .indices import Index, compositions, is_admissible
from .series import TruncatedSeries
from .specfun import BERNOULLI_EVEN, log_gamma

OHNO = "OHNO"
TILDE = "TILDE"


@dataclass(frozen=True)
class EvalConfig:
    trunc_N: int = 10**5
    conn_M: int = 10**5
    degree_D: int = 8

    def __post_init__(self) -> None:
        if self.trunc_N < 10:
            raise DomainError(f"trunc_N must be >= 10, got {self.trunc_N}")
        if self.conn_M < 10:
            raise DomainError(f"conn_M must be >= 10, got {self.conn_M}")
        if not 0 <= self.degree_D <= 16:
            raise DomainError(f"degree_D must be in [0, 16], got {self.degree_D}")


@dataclass(frozen=True)
class ValueWithTail:
    value: complex
    tail_estimate: float  # a-posteriori proxy, not a proven bound
    terms_used: int
    slow_convergence: bool = False


def _check_alpha(alpha: complex) -> complex:
    alpha = complex(alpha)
    if not alpha.real > 0:
        raise DomainError(f"need Re alpha > 0, got {alpha}")
    return alpha


# ---------------------------------------------------------------------------
# Hurwitz zeta (Euler-Maclaurin), also used for tail completion


def hurwitz_zeta(s: complex, q: complex) -> complex:
    """Hurwitz zeta sum_{n>=0} (n+q)^{-s} for Re s > 1, Re q > 0 (Euler-Maclaurin)."""
    s, q = complex(s), complex(q)
    if not s.real > 1:
        raise ConvergenceError(f"hurwitz_zeta needs Re s > 1, got {s}")
    if not q.real > 0:
        raise DomainError(f"hurwitz_zeta needs Re q > 0, got {q}")
    K = 0
    while abs(q + K) < 30:
        K += 1
    head = 0j
    for n in range(K):
        head += (n + q) ** (-s)
    z = q + K
    total = z ** (1 - s) / (s - 1) + 0.5 * z ** (-s)
    rising = s  # (s)_{2k-1} built incrementally
    zpow = z ** (-s - 1)
    for k, b2k in enumerate(BERNOULLI_EVEN, start=1):
        total += b2k / math.factorial(2 * k) * rising * zpow
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        zpow /= z * z
    return head + total


def hurwitz_eval(s: int, alpha: complex) -> complex:
    """Depth-1 oracle: sum_{m>=0} (m+alpha)^{-s} for integer s >= 2."""
    if s < 2:
        raise DomainError(f"hurwitz_eval needs integer s >= 2, got {s}")
    return hurwitz_zeta(complex(s), _check_alpha(alpha))


# ---------------------------------------------------------------------------
# Power-law tail completion


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(192)


def power_law_tail(terms: np.ndarray) -> complex:
    """Estimate the sum of the continuation of a decaying term sequence.

    terms[i] is the term at position u = i + 1.  The last four samples at
    relative positions ~0.512, ~0.64, ~0.8, 1.0 fix the model

        log term(u) = log t_ref + g1*log(u/u_ref) + g2*log(u/u_ref)^2
                      + g3*(u_ref/u - 1)

    (a power law with optional logarithmic factor and first-order rational
    correction), which is then summed over u > n by Euler-Maclaurin with
    Gauss-Legendre quadrature for the integral part.  Returns 0 when the data
    does not look like a convergent power-law decay.
    """
    n = terms.size
    if n < 32:
        return 0j
    pos = [round(frac * n) - 1 for frac in (0.512, 0.64, 0.8, 1.0)]
    samples = [complex(terms[i]) for i in pos]
    if any(t == 0 for t in samples) or len(set(pos)) != 4:
        return 0j
    u_ref = float(pos[-1] + 1)
    t_ref = samples[-1]
    dL = np.array([math.log((i + 1) / u_ref) for i in pos])
    rows = np.stack([dL, dL * dL, u_ref / (np.array(pos, dtype=float) + 1.0) - 1.0], axis=1)
    y = np.array([cmath.log(t / t_ref) for t in samples], dtype=np.complex128)
    try:
        g1, g2, g3 = np.linalg.solve(rows[:3], y[:3])
    except np.linalg.LinAlgError:
        return 0j
    if not all(cmath.isfinite(g) for g in (g1, g2, g3)):
        return 0j

    def f(u):
        d = np.log(u / u_ref)
        return t_ref * np.exp(g1 * d + g2 * d * d + g3 * (u_ref / u - 1.0))

    rate = g1.real + 1.0  # asymptotic d log(u f(u)) / d log u
    if not rate < -0.02 or rate < -100.0:
        return 0j
    v_cap = 46.0 / (-rate)
    if g2.real > 0:
        v_star = -rate / (2.0 * g2.real)
        if -rate * v_star / 2.0 < 40.0:
            return 0j  # insufficient decay before the fitted curvature flips
        v_cap = min(v_cap, v_star)
    v_cap = min(v_cap, 400.0)

    a = u_ref + 1.0
    # integral over u in (a, inf) via u = a * e^v
    v = 0.5 * v_cap * (_GL_NODES + 1.0)
    w = 0.5 * v_cap * _GL_WEIGHTS
    u = a * np.exp(v)
    integral = np.sum(w * f(u) * u)
    fa = complex(f(a))
    fpa = fa * (g1 + 2 * g2 * math.log(a / u_ref) - g3 * u_ref / a) / a
    tail = integral + fa / 2.0 - fpa / 12.0
    # reject a completion wildly out of scale with the last term
    if not cmath.isfinite(tail) or abs(tail) > 1e4 * abs(t_ref) * u_ref:
        return 0j
    return complex(tail)


# ---------------------------------------------------------------------------
# One-sided chain evaluation (shared by the zeta evaluators and the connector
# engine's boundary states)


def pochhammer_head(alpha: complex, n: int) -> np.ndarray:
    """Array of (alpha)_m / m! for m = 0..n via the ratio recurrence."""
    m = np.arange(1, n + 1, dtype=np.float64)
    ratios = (alpha + m - 1.0) / m
    out = np.empty(n + 1, dtype=np.complex128)
    out[0] = 1.0
    np.cumprod(ratios, out=out[1:])
    return out


def tilde_weight(alpha: complex, x: complex, n: int) -> np.ndarray:
    """Array of Gamma(m+a-x+1)/Gamma(m+2a-x) for m = 0..n via the ratio recurrence."""
    a = alpha - x
    m = np.arange(1, n + 1, dtype=np.float64)
    ratios = (m + a) / (m - 1 + 2 * alpha - x)
    out = np.empty(n + 1, dtype=np.complex128)
    out[0] = cmath.exp(log_gamma(a + 1) - log_gamma(2 * alpha - x))
    np.cumprod(ratios, out=out[1:])
    out[1:] *= out[0]
    return out


def chain_outer_terms(
    k: Index, alpha: complex, x: complex, cfg: EvalConfig, flavor: str = OHNO, n_max: int | None = None
) -> np.ndarray:
    """Outer-variable term sequence of a one-sided chain evaluation.

    Entry m is the full weight of the outermost variable at value m, with all
    inner variables already folded in by the prefix-sum DP.  Summing the array
    gives the truncated series value.
    """
    alpha = _check_alpha(alpha)
    x = complex(x)
    if not (alpha - x).real > 0:
        raise DomainError(f"need Re(alpha - x) > 0, got alpha={alpha}, x={x}")
    N = cfg.trunc_N if n_max is None else n_max
    m = np.arange(N + 1, dtype=np.float64)
    base = m + alpha
    base_x = m + alpha - x

    def factor(ki: int) -> np.ndarray:
        return base ** (1 - ki) / base_x

    if flavor == OHNO:
        head = pochhammer_head(alpha, N)
        outer_extra = 1.0 / head
    elif flavor == TILDE:
        head = np.ones(N + 1, dtype=np.complex128)
        outer_extra = tilde_weight(alpha, x, N)
    else:
        raise DomainError(f"unknown flavor {flavor!r}")

    r = len(k)
    if r == 1:
        return head * outer_extra * factor(k[0])
    S = kahan_cumsum_exclusive(head * factor(k[0]))
    for j in range(1, r - 1):
        S = kahan_cumsum_exclusive(S * factor(k[j]))
    return S * factor(k[-1]) * outer_extra


def _sigma_nominal(k: Index, alpha: complex) -> float:
    return k[-1] + alpha.real - 1.0


def _finish(terms: np.ndarray, sigma_nominal: float) -> ValueWithTail:
    if sigma_nominal <= 1.0:
        raise ConvergenceError(f"outer decay exponent {sigma_nominal} <= 1: series diverges")
    value = kahan_sum(terms) + power_law_tail(terms)
    n_last = terms.size - 1
    tail = n_last * abs(terms[-1]) / (sigma_nominal - 1.0)
    return ValueWithTail(
        value=value,
        tail_estimate=tail,
        terms_used=terms.size,
        slow_convergence=sigma_nominal < 1.5,
    )


def pmzs_eval(k: Index, alpha: complex, cfg: EvalConfig = EvalConfig()) -> ValueWithTail:
    """Parametrized multiple zeta series zeta(k; alpha)."""
    if not is_admissible(k):
        raise DomainError(f"index {k!r} is not admissible")
    alpha = _check_alpha(alpha)
    terms = chain_outer_terms(k, alpha, 0j, cfg, OHNO)
    return _finish(terms, _sigma_nominal(k, alpha))


def pmzs_tilde_eval(k: Index, alpha: complex, cfg: EvalConfig = EvalConfig()) -> ValueWithTail:
    """Tilde-flavored series with the Gamma(m+a+1)/Gamma(m+2a) outer weight."""
    if not is_admissible(k):
        raise DomainError(f"index {k!r} is not admissible")
    alpha = _check_alpha(alpha)
    terms = chain_outer_terms(k, alpha, 0j, cfg, TILDE)
    return _finish(terms, _sigma_nominal(k, alpha))


def mzv_eval(k: Index, cfg: EvalConfig = EvalConfig()) -> ValueWithTail:
    """Classical multiple zeta value; identical term sequence to pmzs_eval at alpha=1."""
    return pmzs_eval(k, 1.0 + 0j, cfg)


def ohno_sum(k: Index, m: int, alpha: complex, cfg: EvalConfig = EvalConfig()) -> ValueWithTail:
    """Sum of zeta(k + e; alpha) over all weak compositions e of m into depth(k) parts."""
    if m < 0:
        raise DomainError(f"shift must be >= 0, got {m}")
    if not is_admissible(k):
        raise DomainError(f"index {k!r} is not admissible")
    alpha = _check_alpha(alpha)
    total = 0j
    tail = 0.0
    terms = 0
    slow = False
    for comp in compositions(m, len(k)):
        shifted = tuple(ki + ei for ki, ei in zip(k, comp))
        part = pmzs_eval(shifted, alpha, cfg)
        total += part.value
        tail += part.tail_estimate
        terms += part.terms_used
        slow = slow or part.slow_convergence
    return ValueWithTail(total, tail, terms, slow)


def gf_coefficients(k: Index, alpha: complex, cfg: EvalConfig = EvalConfig()) -> TruncatedSeries:
    """Ohno generating function: x-expansion of the one-sided connected sum.

    Coefficient e equals ohno_sum(k, e, alpha) (up to truncation); the DP is
    the same as pmzs_eval with series-valued weights, each chain factor
    contributing (m+alpha)^{-(k_i + e)} to column e.
    """
    if not is_admissible(k):
        raise DomainError(f"index {k!r} is not admissible")
    alpha = _check_alpha(alpha)
    N, D = cfg.trunc_N, cfg.degree_D
    m = np.arange(N + 1, dtype=np.float64)
    base = m + alpha
    binv = 1.0 / base

    def weight_matrix(ki: int) -> np.ndarray:
        w = np.empty((N + 1, D + 1), dtype=np.complex128)
        w[:, 0] = base ** (-ki)
        for e in range(1, D + 1):
            w[:, e] = w[:, e - 1] * binv
        return w

    def cauchy(sa: np.ndarray, wb: np.ndarray) -> np.ndarray:
        out = np.zeros_like(sa)
        for e in range(D + 1):
            for a in range(e + 1):
                out[:, e] += sa[:, a] * wb[:, e - a]
        return out

    r = len(k)
    if r == 1:
        P = weight_matrix(k[0])
    else:
        head = pochhammer_head(alpha, N)
        cur = weight_matrix(k[0]) * head[:, None]
        S = kahan_cumsum_exclusive_columns(cur)
        for j in range(1, r - 1):
            S = kahan_cumsum_exclusive_columns(cauchy(S, weight_matrix(k[j])))
        P = cauchy(S, weight_matrix(k[-1])) * (1.0 / head)[:, None]
    coeffs = []
    for e in range(D + 1):
        col = np.ascontiguousarray(P[:, e])
        coeffs.append(kahan_sum(col) + power_law_tail(col))
    return TruncatedSeries(tuple(coeffs))
