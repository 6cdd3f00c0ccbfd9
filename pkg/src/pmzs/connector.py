"""Connected sums, connector moves, and the weight-transport algorithm.

A connected state joins two index chains through the gamma-ratio connector.
Two identities drive everything:

* the "gauss" identity (a unit-argument hypergeometric evaluation) connects a
  one-sided sum to a two-sided one and back;
* the "telescope" identity (a term-difference collapse of the inner sum)
  moves one unit of weight across the connector.

Iterating the four induced moves rewrites (k; empty) into (empty; dual(k)),
one move per unit of weight; every step can be checked numerically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from ._sums import kahan_cumsum_exclusive, kahan_sum
from .engine import (
    OHNO,
    TILDE,
    EvalConfig,
    ValueWithTail,
    chain_outer_terms,
    pochhammer_head,
    power_law_tail,
    _check_alpha,
    _finish,
    _sigma_nominal,
)
from .errors import DomainError, IllegalMoveError
from .indices import Index, dual, is_admissible, measures
from .specfun import connector, gauss_ratio, log_gamma, pochhammer_ratio

ENTRY = "ENTRY"
SHIFT = "SHIFT"
POP = "POP"
EXIT = "EXIT"

# relation labels used in move annotations and trace reports
GAUSS = "gauss"
TELESCOPE = "telescope"


@dataclass(frozen=True)
class ConnectedState:
    left: Index
    right: Index
    flavor: str = OHNO

    def __post_init__(self) -> None:
        if not self.left and not self.right:
            raise DomainError("connected state needs at least one nonempty side")
        if any(p < 1 for p in self.left) or any(p < 1 for p in self.right):
            raise DomainError("index parts must be >= 1")
        if self.flavor not in (OHNO, TILDE):
            raise DomainError(f"unknown flavor {self.flavor!r}")

    @property
    def weight(self) -> int:
        return sum(self.left) + sum(self.right)


@dataclass(frozen=True)
class Move:
    kind: str  # ENTRY | SHIFT | POP | EXIT
    relation: str  # GAUSS or TELESCOPE, per flavor
    r: int  # left depth when the move was applied
    s: int  # right depth when the move was applied

    @property
    def label(self) -> str:
        return f"{self.kind}[{self.relation} r={self.r},s={self.s}]"


@dataclass
class TransportTrace:
    start: Index
    flavor: str
    states: list[ConnectedState]
    moves: list[Move]
    residuals: list[float] | None = field(default=None)


def apply_move(st: ConnectedState, mv: Move) -> ConnectedState:
    """Apply one rewrite move, checking the state-shape precondition."""
    left, right = st.left, st.right
    if mv.kind == ENTRY:
        if right or not left or left[-1] < 2:
            raise IllegalMoveError(f"ENTRY needs empty right and left last >= 2, got {st}")
        return ConnectedState(left[:-1] + (left[-1] - 1,), (1,), st.flavor)
    if mv.kind == SHIFT:
        if not right or not left or left[-1] < 2:
            raise IllegalMoveError(f"SHIFT needs nonempty right and left last >= 2, got {st}")
        return ConnectedState(left[:-1] + (left[-1] - 1,), right + (1,), st.flavor)
    if mv.kind == POP:
        if not right or len(left) < 2 or left[-1] != 1:
            raise IllegalMoveError(f"POP needs left (...,1) of length >= 2 and nonempty right, got {st}")
        return ConnectedState(left[:-1], right[:-1] + (right[-1] + 1,), st.flavor)
    if mv.kind == EXIT:
        if left != (1,) or not right:
            raise IllegalMoveError(f"EXIT needs left = (1) and nonempty right, got {st}")
        return ConnectedState((), right[:-1] + (right[-1] + 1,), st.flavor)
    raise IllegalMoveError(f"unknown move kind {mv.kind!r}")


def _select_move(st: ConnectedState) -> Move:
    # boundary moves are GAUSS instances for the plain flavor but TELESCOPE
    # instances (with the -1 sentinel) for the tilde flavor
    boundary = GAUSS if st.flavor == OHNO else TELESCOPE
    r, s = len(st.left), len(st.right)
    if st.left == (1,) and st.right:
        return Move(EXIT, boundary, r, s)
    if not st.right:
        return Move(ENTRY, boundary, r, s)
    if st.left[-1] >= 2:
        return Move(SHIFT, TELESCOPE, r, s)
    return Move(POP, TELESCOPE, r, s)


def transport(k: Index, flavor: str = OHNO) -> TransportTrace:
    """Deterministic move sequence from (k; empty) to (empty; dual(k)).

    Terminates in exactly weight(k) moves; the endpoint's right index is the
    dual of k.
    """
    if not is_admissible(k):
        raise DomainError(f"index {k!r} is not admissible")
    st = ConnectedState(k, (), flavor)
    states = [st]
    moves: list[Move] = []
    while st.left:
        mv = _select_move(st)
        st = apply_move(st, mv)
        moves.append(mv)
        states.append(st)
    assert st.right == dual(k)
    assert len(moves) == measures(k)[0]
    return TransportTrace(start=k, flavor=flavor, states=states, moves=moves)


# ---------------------------------------------------------------------------
# Numerical evaluation of connected states


def _log_gamma_table(c: complex, n: int) -> np.ndarray:
    """Array of log Gamma(t + c) for t = 0..n via cumulative log sums."""
    out = np.empty(n + 1, dtype=np.complex128)
    out[0] = log_gamma(c)
    if n:
        out[1:] = out[0] + np.cumsum(np.log(np.arange(n, dtype=np.float64) + c))
    return out


def _chain_weights(k: Index, alpha: complex, x: complex, flavor: str, M: int) -> np.ndarray:
    """Per-outer-value weights of one chain of a two-sided state.

    Entry m is the chain's contribution at outer value m with the inner
    variables folded in; the connector and the global prefactor are not
    included.
    """
    m = np.arange(M + 1, dtype=np.float64)
    base = m + alpha
    base_x = m + alpha - x

    def factor(ki: int) -> np.ndarray:
        return base ** (1 - ki) / base_x

    head = pochhammer_head(alpha, M) if flavor == OHNO else np.ones(M + 1, dtype=np.complex128)
    r = len(k)
    if r == 1:
        return head * factor(k[0])
    S = kahan_cumsum_exclusive(head * factor(k[0]))
    for j in range(1, r - 1):
        S = kahan_cumsum_exclusive(S * factor(k[j]))
    return S * factor(k[-1])


def _two_sided_eval(st: ConnectedState, alpha: complex, x: complex, cfg: EvalConfig) -> ValueWithTail:
    M = cfg.conn_M
    a = alpha - x
    mw = _chain_weights(st.left, alpha, x, st.flavor, M)
    nw = _chain_weights(st.right, alpha, x, st.flavor, M)
    lg_side = _log_gamma_table(a + 1, M)  # log Gamma(t + a + 1)
    lg_mid = _log_gamma_table(2 * alpha - x + 1, 2 * M)  # log Gamma(d + 2*alpha - x + 1)
    if st.flavor == OHNO:
        prefactor = cmath.exp(log_gamma(alpha) - log_gamma(a))
    else:
        prefactor = cmath.exp(-log_gamma(a))

    rows = np.zeros(M + 1, dtype=np.complex128)
    n_hi = M
    inner_tail = 0.0
    scale = 0.0
    m0 = 0
    done = False
    while m0 <= M and not done:
        # block size shrinks while rows are still wide, to bound temp memory
        block = max(8, min(256, int(2e6 // (n_hi + 1))))
        ms = np.arange(m0, min(m0 + block, M + 1))
        ns = np.arange(n_hi + 1)
        conn = np.exp(lg_side[ms][:, None] + lg_side[None, : n_hi + 1] - lg_mid[ms[:, None] + ns[None, :]])
        terms = conn * nw[None, : n_hi + 1]
        row_sums = terms.sum(axis=1)
        # rows cut off by the global limit (not by decay) still carry an
        # inner tail; complete them the same way as the outer sum and keep
        # a proxy for what the completion may have missed
        if n_hi == M:
            for i in range(terms.shape[0]):
                last = abs(terms[i, -1])
                if last > 1e-18 * abs(row_sums[i]):
                    row_sums[i] += power_law_tail(terms[i])
                    inner_tail += abs(mw[ms[i]]) * M * last
        rows[ms] = mw[ms] * row_sums
        scale = max(scale, float(np.max(np.abs(rows[ms]))))
        # shrink the n range based on the last computed row's term profile
        profile = np.abs(mw[ms[-1]] * terms[-1])
        keep = np.nonzero(profile > 1e-22 * max(scale, 1e-300))[0]
        n_hi = min(n_hi, max(64, (int(keep[-1]) if keep.size else 0) + 16))
        # stop once the remaining rows are provably negligible
        last_mag = float(np.max(np.abs(rows[ms[-3:]])))
        if ms[-1] > 256 and last_mag * (M - ms[-1] + 1) < 1e-16 * scale:
            rows = rows[: ms[-1] + 1]
            done = True
        m0 = ms[-1] + 1

    total = kahan_sum(np.ascontiguousarray(rows)) + power_law_tail(rows)
    m_last = rows.size - 1
    tail = abs(prefactor) * (m_last * abs(rows[-1]) + inner_tail)
    return ValueWithTail(
        value=prefactor * total,
        tail_estimate=tail,
        terms_used=rows.size,
        slow_convergence=False,
    )


def connected_sum_eval(
    st: ConnectedState, alpha: complex, x: complex = 0j, cfg: EvalConfig = EvalConfig()
) -> ValueWithTail:
    """Numeric value of a connected state at a numeric point x.

    One-sided states reduce to the plain chain evaluation (identical term
    sequence to the zeta evaluators); two-sided states run the connector
    double sum with adaptive truncation of the inner range.
    """
    alpha = _check_alpha(alpha)
    x = complex(x)
    if not (alpha - x).real > 0:
        raise DomainError(f"need Re(alpha - x) > 0, got alpha={alpha}, x={x}")
    if st.left and st.right:
        return _two_sided_eval(st, alpha, x, cfg)
    side = st.left if st.left else st.right
    if side[-1] < 2:
        raise DomainError(f"one-sided state needs last part >= 2, got {st}")
    terms = chain_outer_terms(side, alpha, x, cfg, st.flavor, n_max=cfg.trunc_N)
    return _finish(terms, _sigma_nominal(side, alpha))


def verify_trace(
    tr: TransportTrace, alpha: complex, x: complex = 0j, cfg: EvalConfig = EvalConfig()
) -> dict:
    """Evaluate every state of a trace and report the per-step residuals.

    A step passes when |value_i - value_{i+1}| <= max(1e-8, 10 * (tail_i +
    tail_{i+1})).
    """
    evals = [connected_sum_eval(st, alpha, x, cfg) for st in tr.states]
    residuals = []
    tolerances = []
    for a, b in zip(evals, evals[1:]):
        residuals.append(abs(a.value - b.value))
        tolerances.append(max(1e-8, 10.0 * (a.tail_estimate + b.tail_estimate)))
    tr.residuals = residuals
    return {
        "start": tr.start,
        "flavor": tr.flavor,
        "values": [v.value for v in evals],
        "tails": [v.tail_estimate for v in evals],
        "residuals": residuals,
        "tolerances": tolerances,
        "max_residual": max(residuals),
        "passed": all(r <= t for r, t in zip(residuals, tolerances)),
    }


# ---------------------------------------------------------------------------
# Identity verification


def _gauss_sum_terms(m: int, alpha: complex, x: complex, M: int) -> np.ndarray:
    """Terms of the gauss-identity inner sum over n for fixed m >= 0."""
    a = alpha - x
    n = np.arange(M + 1, dtype=np.float64)
    lg_side = _log_gamma_table(a + 1, M)
    lg_mid = _log_gamma_table(2 * alpha - x + 1, 2 * M)
    conn_m = np.exp(log_gamma(m + a + 1) + lg_side - lg_mid[m : m + M + 1])
    return pochhammer_head(alpha, M) / (n + a) * conn_m


def _telescope_sum_terms(m: int, n_from: int, alpha: complex, x: complex, M: int) -> np.ndarray:
    """Terms of the telescoping inner sum over n > n_from for fixed m."""
    a = alpha - x
    n = np.arange(n_from + 1, M + 1, dtype=np.float64)
    lg_side = _log_gamma_table(a + 1, M)
    lg_mid = _log_gamma_table(2 * alpha - x + 1, 2 * M)
    conn_m = np.exp(
        log_gamma(m + a + 1) + lg_side[n_from + 1 :] - lg_mid[m + n_from + 1 : m + M + 1]
    )
    return conn_m / (n + a)


def _gauss_identity(m: int, alpha: complex, x: complex, cfg: EvalConfig) -> dict:
    if m < 0:
        raise DomainError(f"gauss identity needs m >= 0, got {m}")
    terms = _gauss_sum_terms(m, alpha, x, cfg.conn_M)
    lhs = kahan_sum(terms) + power_law_tail(terms)
    a = alpha - x
    rhs = cmath.exp(log_gamma(a) - log_gamma(alpha)) / (m + alpha) / pochhammer_ratio(alpha, m)
    closed = cmath.exp(
        log_gamma(m + a + 1) + log_gamma(a) - log_gamma(m + 2 * alpha - x + 1)
    ) * gauss_ratio(a, alpha, m + 2 * alpha - x + 1)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "residual": abs(lhs - rhs),
        "closed_form_residual": abs(lhs - closed),
    }


def _telescope_identity(m: int, n: int, alpha: complex, x: complex, cfg: EvalConfig) -> dict:
    if m < 0 or n < -1:
        raise DomainError(f"telescope identity needs m >= 0 and n >= -1, got m={m}, n={n}")
    terms = _telescope_sum_terms(m, n, alpha, x, cfg.conn_M)
    lhs = kahan_sum(terms) + power_law_tail(terms)
    rhs = connector(m, n, alpha, x) / (m + alpha)
    return {"lhs": lhs, "rhs": rhs, "residual": abs(lhs - rhs)}


def verify_connector_relations(
    m: int, n: int, alpha: complex, x: complex = 0j, cfg: EvalConfig = EvalConfig()
) -> dict:
    """Residual report for the two connector identities at (m, n, alpha, x).

    Covers the identities at the requested x, their x = 0 specializations,
    and the classical factorial connectors recovered at alpha = 1, x = 0.
    """
    alpha = _check_alpha(alpha)
    x = complex(x)
    if not (alpha - x).real > 0:
        raise DomainError(f"need Re(alpha - x) > 0, got alpha={alpha}, x={x}")
    report = {
        "gauss": _gauss_identity(m, alpha, x, cfg),
        "telescope": _telescope_identity(m, n, alpha, x, cfg),
        "gauss_x0": _gauss_identity(m, alpha, 0j, cfg),
        "telescope_x0": _telescope_identity(m, n, alpha, 0j, cfg),
        # classical factorial connectors: insertion and collapse at alpha=1
        "mzv_insert": _telescope_identity(m, n, 1.0 + 0j, 0j, cfg),
        "mzv_collapse": _telescope_identity(max(n, 0), m - 1 if m >= 1 else -1, 1.0 + 0j, 0j, cfg),
    }
    report["max_residual"] = max(entry["residual"] for entry in report.values())
    return report
