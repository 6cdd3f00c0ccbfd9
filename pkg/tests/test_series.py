"""Truncated series arithmetic and gamma-ratio expansions."""

import cmath

import pytest
from hypothesis import given, strategies as st

from pmzs.errors import DomainError
from pmzs.series import (
    DEFAULT_DEGREE,
    MAX_DEGREE,
    TruncatedSeries,
    connector_series,
    exp,
    inv,
    log,
    log_gamma_series,
    reciprocal_linear,
)
from pmzs.specfun import connector, log_gamma

coeff_strategy = st.complex_numbers(
    allow_nan=False, allow_infinity=False, min_magnitude=0, max_magnitude=10
)
series_strategy = st.lists(coeff_strategy, min_size=5, max_size=9).map(
    lambda cs: TruncatedSeries(tuple(cs))
)
# unit-scale constant term and small higher coefficients, for roundtrips
tame_series_strategy = st.tuples(
    st.complex_numbers(allow_nan=False, allow_infinity=False,
                       min_magnitude=0.5, max_magnitude=2),
    st.lists(st.complex_numbers(allow_nan=False, allow_infinity=False,
                                min_magnitude=0, max_magnitude=1),
             min_size=4, max_size=8),
).map(lambda t: TruncatedSeries((t[0],) + tuple(t[1])))


def max_coeff_diff(a, b):
    d = min(a.degree, b.degree)
    return max(abs(a.coeffs[e] - b.coeffs[e]) for e in range(d + 1))


class TestRingAxioms:
    @given(series_strategy, series_strategy, series_strategy)
    def test_mul_associative(self, a, b, c):
        scale = max(1.0, max(abs(x) for s in (a, b, c) for x in s.coeffs) ** 3)
        assert max_coeff_diff((a * b) * c, a * (b * c)) <= 1e-12 * scale

    @given(series_strategy, series_strategy)
    def test_mul_commutative(self, a, b):
        scale = max(1.0, max(abs(x) for s in (a, b) for x in s.coeffs) ** 2)
        assert max_coeff_diff(a * b, b * a) <= 1e-12 * scale

    @given(series_strategy, series_strategy, series_strategy)
    def test_distributive(self, a, b, c):
        scale = max(1.0, max(abs(x) for s in (a, b, c) for x in s.coeffs) ** 2)
        assert max_coeff_diff(a * (b + c), a * b + a * c) <= 1e-12 * scale

    def test_identity_elements(self):
        a = TruncatedSeries((2 + 1j, 0.5j, -3 + 0j, 1 + 0j))
        one = TruncatedSeries.constant(1, a.degree)
        zero = TruncatedSeries.constant(0, a.degree)
        assert (a * one).coeffs == a.coeffs
        assert (a + zero).coeffs == a.coeffs
        assert (a - a).coeffs == zero.coeffs


class TestMixedDegree:
    def test_truncates_to_smaller(self):
        a = TruncatedSeries((1, 1, 1, 1, 1))
        b = TruncatedSeries((1, 1))
        assert (a + b).degree == 1
        assert (a * b).degree == 1

    def test_scalar_ops(self):
        a = TruncatedSeries((1 + 0j, 2 + 0j))
        assert (2 * a).coeffs == (2 + 0j, 4 + 0j)
        assert (a + 1).coeffs == (2 + 0j, 2 + 0j)
        assert (1 - a).coeffs == (0j, -2 + 0j)

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            TruncatedSeries((0j,) * (MAX_DEGREE + 2))


class TestInvExpLog:
    def test_inv_geometric(self):
        # 1/(1-x) = 1 + x + x^2 + ...
        s = TruncatedSeries((1, -1) + (0,) * 6)
        assert all(abs(c - 1) < 1e-14 for c in inv(s).coeffs)

    @given(tame_series_strategy)
    def test_inv_roundtrip(self, a):
        prod = a * inv(a)
        assert abs(prod.coeffs[0] - 1) < 1e-12
        assert all(abs(c) < 1e-11 for c in prod.coeffs[1:])

    def test_exp_of_variable(self):
        e = exp(TruncatedSeries.variable(8))
        fact = 1.0
        for n, c in enumerate(e.coeffs):
            fact = fact * n if n else 1.0
            assert abs(c - 1.0 / fact) < 1e-14

    @given(tame_series_strategy)
    def test_exp_log_roundtrip(self, a):
        back = exp(log(a))
        assert max_coeff_diff(back, a) <= 1e-12

    def test_exp_adds(self):
        a = TruncatedSeries((0.3, -0.2, 0.1, 0.05))
        b = TruncatedSeries((0.1, 0.4, -0.3, 0.2))
        lhs = exp(a) * exp(b)
        rhs = exp(a + b)
        assert max_coeff_diff(lhs, rhs) < 1e-13

    def test_log_rejects_zero_constant(self):
        with pytest.raises(DomainError):
            log(TruncatedSeries.variable(3))
        with pytest.raises(DomainError):
            inv(TruncatedSeries.variable(3))


class TestStructuredExpansions:
    def test_reciprocal_linear(self):
        # 1/(c - x) evaluated at small x vs the expansion
        c = 2.5 + 0.5j
        s = reciprocal_linear(c, 10)
        for x in [0.1 + 0j, 0.05 - 0.02j]:
            assert abs(s.evaluate(x) - 1.0 / (c - x)) < 1e-12

    def test_log_gamma_series_numeric(self):
        # expansion of log Gamma(c - x) around x=0 vs direct evaluation
        c = 3.0 + 0.4j
        s = log_gamma_series(c, 12)
        for x in [0.1 + 0j, -0.08 + 0.03j, 0.05j]:
            assert abs(s.evaluate(x) - log_gamma(c - x)) < 1e-12

    def test_connector_series_matches_numeric(self):
        for m, n in [(0, 0), (2, 5), (1, -1)]:
            for alpha in [1.0 + 0j, 1.5 + 0j, 0.9 + 0.2j]:
                s = connector_series(m, n, alpha, 12)
                for x in [0.2 + 0j, 0.1 - 0.1j]:
                    direct = connector(m, n, alpha, x)
                    assert abs(s.evaluate(x) - direct) < 1e-8 * max(1.0, abs(direct))

    def test_connector_series_symmetric(self):
        a = connector_series(1, 4, 1.3 + 0j, DEFAULT_DEGREE)
        b = connector_series(4, 1, 1.3 + 0j, DEFAULT_DEGREE)
        assert a.coeffs == b.coeffs

    def test_horner_matches_direct(self):
        s = TruncatedSeries((1 + 1j, 2 + 0j, 0.5 - 0.5j))
        x = 0.3 + 0.1j
        direct = sum(c * x**e for e, c in enumerate(s.coeffs))
        assert cmath.isclose(s.evaluate(x), direct, rel_tol=1e-14)
