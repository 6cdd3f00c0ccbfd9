"""Numerical toolkit for parametrized multiple zeta series.

Evaluates the Pochhammer-weighted nested series and its tilde-weighted
variant, computes dual indices, runs the connector-transport rewriting that
proves the duality and Ohno relations, and verifies every identity
numerically with explicit tail accounting.
"""

from .connector import (
    ConnectedState,
    Move,
    TransportTrace,
    apply_move,
    connected_sum_eval,
    transport,
    verify_connector_relations,
    verify_trace,
)
from .engine import (
    OHNO,
    TILDE,
    EvalConfig,
    ValueWithTail,
    gf_coefficients,
    hurwitz_eval,
    hurwitz_zeta,
    mzv_eval,
    ohno_sum,
    pmzs_eval,
    pmzs_tilde_eval,
)
from .errors import ConvergenceError, DomainError, IllegalMoveError
from .indices import (
    admissible_indices,
    compositions,
    dual,
    format_index,
    is_admissible,
    measures,
    parse_index,
    reassemble,
    run_decompose,
)
from .series import (
    TruncatedSeries,
    connector_series,
    exp,
    inv,
    log,
    log_gamma_series,
    reciprocal_linear,
)
from .specfun import (
    connector,
    format_complex,
    gauss_ratio,
    log_gamma,
    parse_complex,
    pochhammer_ratio,
    polygamma,
)

__version__ = "0.1.0"

__all__ = [
    "ConnectedState",
    "ConvergenceError",
    "DomainError",
    "EvalConfig",
    "IllegalMoveError",
    "Move",
    "OHNO",
    "TILDE",
    "TransportTrace",
    "TruncatedSeries",
    "ValueWithTail",
    "admissible_indices",
    "apply_move",
    "compositions",
    "connected_sum_eval",
    "connector",
    "connector_series",
    "dual",
    "exp",
    "format_complex",
    "format_index",
    "gauss_ratio",
    "gf_coefficients",
    "hurwitz_eval",
    "hurwitz_zeta",
    "inv",
    "is_admissible",
    "log",
    "log_gamma",
    "log_gamma_series",
    "measures",
    "mzv_eval",
    "ohno_sum",
    "parse_complex",
    "parse_index",
    "pmzs_eval",
    "pmzs_tilde_eval",
    "pochhammer_ratio",
    "polygamma",
    "reassemble",
    "reciprocal_linear",
    "run_decompose",
    "transport",
    "verify_connector_relations",
    "verify_trace",
]
