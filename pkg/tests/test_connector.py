"""Connected sums, rewrite moves, transport, and identity verification."""

import pytest

from pmzs.connector import (
    ConnectedState,
    Move,
    apply_move,
    connected_sum_eval,
    transport,
    verify_connector_relations,
    verify_trace,
)
from pmzs.engine import OHNO, TILDE, EvalConfig, pmzs_eval, pmzs_tilde_eval
from pmzs.errors import DomainError, IllegalMoveError
from pmzs.indices import admissible_indices, dual, measures

CFG = EvalConfig(trunc_N=3 * 10**4, conn_M=3 * 10**4)


class TestStates:
    def test_rejects_empty_both_sides(self):
        with pytest.raises(DomainError):
            ConnectedState((), ())

    def test_rejects_nonpositive_parts(self):
        with pytest.raises(DomainError):
            ConnectedState((0, 2), ())

    def test_weight(self):
        assert ConnectedState((2, 3), (1,)).weight == 6


class TestMoves:
    def test_entry(self):
        st = ConnectedState((2, 3), ())
        out = apply_move(st, Move("ENTRY", "gauss", 2, 0))
        assert (out.left, out.right) == ((2, 2), (1,))

    def test_shift(self):
        st = ConnectedState((2, 2), (1,))
        out = apply_move(st, Move("SHIFT", "telescope", 2, 1))
        assert (out.left, out.right) == ((2, 1), (1, 1))

    def test_pop(self):
        st = ConnectedState((2, 1), (1, 1))
        out = apply_move(st, Move("POP", "telescope", 2, 2))
        assert (out.left, out.right) == ((2,), (1, 2))

    def test_exit(self):
        st = ConnectedState((1,), (1, 2, 1))
        out = apply_move(st, Move("EXIT", "gauss", 1, 3))
        assert (out.left, out.right) == ((), (1, 2, 2))

    def test_illegal_moves_raise(self):
        with pytest.raises(IllegalMoveError):
            apply_move(ConnectedState((2, 1), (1,)), Move("ENTRY", "gauss", 2, 1))
        with pytest.raises(IllegalMoveError):
            apply_move(ConnectedState((2, 2), ()), Move("SHIFT", "telescope", 2, 0))
        with pytest.raises(IllegalMoveError):
            apply_move(ConnectedState((2, 2), (1,)), Move("POP", "telescope", 2, 1))
        with pytest.raises(IllegalMoveError):
            apply_move(ConnectedState((1, 1), (1,)), Move("EXIT", "gauss", 2, 1))
        with pytest.raises(IllegalMoveError):
            apply_move(ConnectedState((2,), (1,)), Move("WARP", "gauss", 1, 1))


class TestTransportStructure:
    def test_worked_example_moves(self):
        tr = transport((2, 3))
        kinds = [m.kind for m in tr.moves]
        assert kinds == ["ENTRY", "SHIFT", "POP", "SHIFT", "EXIT"]
        assert tr.states[-1].right == (1, 2, 2)

    def test_move_count_equals_weight(self):
        for w in range(2, 11):
            for k in admissible_indices(w):
                tr = transport(k)
                assert len(tr.moves) == w
                assert tr.states[-1].left == ()
                assert tr.states[-1].right == dual(k)

    def test_tilde_same_structure(self):
        for w in range(2, 9):
            for k in admissible_indices(w):
                tr = transport(k, flavor=TILDE)
                assert len(tr.moves) == measures(k)[0]
                assert tr.states[-1].right == dual(k)

    def test_tilde_boundary_moves_are_telescopes(self):
        tr = transport((2, 3), flavor=TILDE)
        assert tr.moves[0].relation == "telescope"
        assert tr.moves[-1].relation == "telescope"
        plain = transport((2, 3))
        assert plain.moves[0].relation == "gauss"
        assert plain.moves[-1].relation == "gauss"

    def test_rejects_non_admissible(self):
        with pytest.raises(DomainError):
            transport((2, 1))


class TestConnectedSumEval:
    def test_one_sided_matches_plain_eval_at_x_zero(self):
        for k in [(3,), (1, 2), (2, 2)]:
            left = connected_sum_eval(ConnectedState(k, ()), 1.5 + 0j, 0j, CFG)
            direct = pmzs_eval(k, 1.5 + 0j, CFG)
            assert left.value == direct.value
            right = connected_sum_eval(ConnectedState((), k), 1.5 + 0j, 0j, CFG)
            assert right.value == direct.value

    def test_one_sided_tilde_matches_plain(self):
        st = ConnectedState((1, 2), (), flavor=TILDE)
        v = connected_sum_eval(st, 1.3 + 0j, 0j, CFG)
        assert v.value == pmzs_tilde_eval((1, 2), 1.3 + 0j, CFG).value

    def test_two_sided_symmetric(self):
        a = connected_sum_eval(ConnectedState((2,), (1, 2)), 1.2 + 0j, 0.1 + 0j, CFG)
        b = connected_sum_eval(ConnectedState((1, 2), (2,)), 1.2 + 0j, 0.1 + 0j, CFG)
        assert abs(a.value - b.value) < 1e-10

    def test_rejects_bad_deformation_point(self):
        with pytest.raises(DomainError):
            connected_sum_eval(ConnectedState((2,), (1,)), 1.0 + 0j, 1.5 + 0j, CFG)


class TestTraceVerification:
    @pytest.mark.parametrize("alpha,x", [(1.0 + 0j, 0j), (1.5 + 0j, 0.2 + 0j)])
    def test_worked_example_trace(self, alpha, x):
        tr = transport((2, 3))
        report = verify_trace(tr, alpha, x, CFG)
        assert report["passed"], report["residuals"]
        # endpoints are the two dual evaluations
        lhs = pmzs_eval((2, 3), alpha, CFG) if x == 0 else None
        if lhs is not None:
            assert abs(report["values"][0] - lhs.value) < 1e-12

    def test_tilde_trace(self):
        tr = transport((2, 3), flavor=TILDE)
        report = verify_trace(tr, 1.3 + 0j, 0j, CFG)
        assert report["passed"], report["residuals"]

    def test_complex_parameters(self):
        tr = transport((3,))
        report = verify_trace(tr, 1.0 + 0.5j, 0.1 + 0.1j, CFG)
        assert report["passed"], report["residuals"]


class TestIdentityVerification:
    def test_residuals_small_on_sample(self):
        report = verify_connector_relations(1, 0, 1.5 + 0j, 0.2 + 0j, CFG)
        assert report["max_residual"] < 1e-9
        assert report["gauss"]["closed_form_residual"] < 1e-10

    def test_sentinel_arguments(self):
        report = verify_connector_relations(0, -1, 1.0 + 0j, 0j, CFG)
        assert report["max_residual"] < 1e-9

    def test_complex_point(self):
        report = verify_connector_relations(2, 1, 0.8 + 0.3j, 0.1 - 0.1j, CFG)
        assert report["max_residual"] < 1e-9

    def test_rejects_bad_domain(self):
        with pytest.raises(DomainError):
            verify_connector_relations(0, 0, 1.0 + 0j, 2.0 + 0j, CFG)
        with pytest.raises(DomainError):
            verify_connector_relations(-2, 0, 1.0 + 0j, 0j, CFG)
