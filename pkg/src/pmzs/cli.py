"""Command-line interface.

One subcommand per library artifact: index operations (dual, decompose),
evaluations (eval, eval-tilde, ohno, gf-coeffs), and verifications
(verify-duality, verify-ohno, verify-connectors, transport --verify).

Output is a human-readable table by default; --json emits a report object
with deterministic content (elapsed_ms is the only field that varies between
identical runs).  Exit codes: 0 ok, 1 verification violation, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .connector import (
    ConnectedState,
    transport,
    verify_connector_relations,
    verify_trace,
)
from .engine import (
    OHNO,
    TILDE,
    EvalConfig,
    gf_coefficients,
    mzv_eval,
    ohno_sum,
    pmzs_eval,
    pmzs_tilde_eval,
)
from .errors import ConvergenceError, DomainError
from .indices import dual, format_index, parse_index, run_decompose
from .specfun import format_complex, parse_complex

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BAD_INPUT = 2


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="pmzs", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, index: bool = True, **flags) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if index:
            p.add_argument("index", help="index literal k1,k2,...,kr")
        if flags.get("alpha"):
            p.add_argument("--alpha", default="1", help="complex literal a, a+bi, or a-bi")
        if flags.get("x"):
            p.add_argument("--x", default="0", help="complex deformation point")
        if flags.get("shift"):
            p.add_argument("--shift", type=int, default=0, help="total weight shift m >= 0")
        if flags.get("trunc"):
            p.add_argument("--trunc", type=int, default=10**5, help="outer truncation bound")
        if flags.get("conn"):
            p.add_argument("--conn", type=int, default=10**5, help="connector-sum truncation bound")
        if flags.get("degree"):
            p.add_argument("--degree", type=int, default=8, help="series truncation degree")
        if flags.get("tilde"):
            p.add_argument("--tilde", action="store_true", help="use the tilde-weighted flavor")
        if flags.get("verify"):
            p.add_argument("--verify", action="store_true", help="evaluate and check every step")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    add("dual", "dual index")
    add("decompose", "run-length decomposition")
    add("eval", "evaluate the parametrized series", alpha=True, trunc=True)
    add("eval-tilde", "evaluate the tilde-weighted series", alpha=True, trunc=True)
    add("ohno", "sum of shifted evaluations over weak compositions",
        alpha=True, shift=True, trunc=True)
    add("gf-coeffs", "generating-function coefficients", alpha=True, trunc=True, degree=True)
    add("verify-duality", "check the value against its dual index", alpha=True, trunc=True)
    add("verify-ohno", "check the shifted sum against its dual", alpha=True, shift=True, trunc=True)
    p = add("verify-connectors", "residuals of the two connector identities",
            index=False, alpha=True, x=True, conn=True)
    p.add_argument("m", type=int, help="outer value of the left chain, >= 0")
    p.add_argument("n", type=int, help="outer value of the right chain, >= -1")
    add("transport", "move sequence from (k; empty) to (empty; dual k)",
        alpha=True, x=True, trunc=True, conn=True, tilde=True, verify=True)
    return top


def _cfg(args: argparse.Namespace) -> EvalConfig:
    return EvalConfig(
        trunc_N=getattr(args, "trunc", 10**5),
        conn_M=getattr(args, "conn", 10**5),
        degree_D=getattr(args, "degree", 8),
    )


def _cmd_dual(args, report):
    k = parse_index(args.index)
    d = dual(k)
    report["result"] = {"index": list(k), "dual": list(d)}
    return [format_index(d)], EXIT_OK


def _cmd_decompose(args, report):
    k = parse_index(args.index)
    runs = run_decompose(k)
    report["result"] = {"index": list(k), "runs": [list(r) for r in runs]}
    lines = ["run  ones  final"] + [f"{i:<4d} {a:<5d} {b}" for i, (a, b) in enumerate(runs)]
    return lines, EXIT_OK


def _eval_common(args, report, evaluator):
    k = parse_index(args.index)
    alpha = parse_complex(args.alpha)
    v = evaluator(k, alpha, _cfg(args))
    report["result"] = {
        "index": list(k),
        "alpha": _pair(alpha),
        "value": _pair(v.value),
        "terms_used": v.terms_used,
        "slow_convergence": v.slow_convergence,
    }
    report["diagnostics"]["tail_estimates"] = [v.tail_estimate]
    lines = [
        f"value          {format_complex(v.value)}",
        f"tail estimate  {v.tail_estimate:.6e}",
        f"terms used     {v.terms_used}",
    ]
    if v.slow_convergence:
        lines.append("warning: slow convergence, tail estimate is loose")
    return lines, EXIT_OK


def _cmd_eval(args, report):
    return _eval_common(args, report, pmzs_eval)


def _cmd_eval_tilde(args, report):
    return _eval_common(args, report, pmzs_tilde_eval)


def _cmd_ohno(args, report):
    k = parse_index(args.index)
    alpha = parse_complex(args.alpha)
    v = ohno_sum(k, args.shift, alpha, _cfg(args))
    report["result"] = {
        "index": list(k),
        "shift": args.shift,
        "alpha": _pair(alpha),
        "value": _pair(v.value),
        "terms_used": v.terms_used,
    }
    report["diagnostics"]["tail_estimates"] = [v.tail_estimate]
    return [f"value          {format_complex(v.value)}",
            f"tail estimate  {v.tail_estimate:.6e}"], EXIT_OK


def _cmd_gf_coeffs(args, report):
    k = parse_index(args.index)
    alpha = parse_complex(args.alpha)
    series = gf_coefficients(k, alpha, _cfg(args))
    report["result"] = {
        "index": list(k),
        "alpha": _pair(alpha),
        "coefficients": [_pair(c) for c in series.coeffs],
    }
    report["diagnostics"]["tail_estimates"] = []
    lines = ["degree  coefficient"]
    lines += [f"{e:<7d} {format_complex(c)}" for e, c in enumerate(series.coeffs)]
    return lines, EXIT_OK


def _verify_pair(args, report, evaluate, payload):
    """Shared duality-style check: two values, residual vs 10x tail sum."""
    left, right = evaluate()
    residual = float(abs(left.value - right.value))
    tolerance = float(max(1e-8, 10.0 * (left.tail_estimate + right.tail_estimate)))
    ok = bool(residual <= tolerance)
    payload.update({
        "lhs": _pair(left.value),
        "rhs": _pair(right.value),
        "residual": residual,
        "tolerance": tolerance,
        "passed": ok,
    })
    report["result"] = payload
    report["diagnostics"]["tail_estimates"] = [left.tail_estimate, right.tail_estimate]
    if not ok:
        report["status"] = "violation"
    lines = [
        f"lhs        {format_complex(left.value)}",
        f"rhs        {format_complex(right.value)}",
        f"residual   {residual:.6e}",
        f"tolerance  {tolerance:.6e}",
        "PASS" if ok else "FAIL",
    ]
    return lines, EXIT_OK if ok else EXIT_VIOLATION


def _cmd_verify_duality(args, report):
    k = parse_index(args.index)
    d = dual(k)
    alpha = parse_complex(args.alpha)
    cfg = _cfg(args)
    return _verify_pair(
        args, report,
        lambda: (pmzs_eval(k, alpha, cfg), pmzs_eval(d, alpha, cfg)),
        {"index": list(k), "dual": list(d), "alpha": _pair(alpha)},
    )


def _cmd_verify_ohno(args, report):
    k = parse_index(args.index)
    d = dual(k)
    alpha = parse_complex(args.alpha)
    cfg = _cfg(args)
    return _verify_pair(
        args, report,
        lambda: (ohno_sum(k, args.shift, alpha, cfg), ohno_sum(d, args.shift, alpha, cfg)),
        {"index": list(k), "dual": list(d), "shift": args.shift, "alpha": _pair(alpha)},
    )


_CONNECTOR_TOLERANCES = {
    "gauss": 1e-9,
    "telescope": 1e-9,
    "gauss_x0": 1e-9,
    "telescope_x0": 1e-9,
    "mzv_insert": 1e-9,
    "mzv_collapse": 1e-9,
    "gauss_closed_form": 1e-10,
}


def _cmd_verify_connectors(args, report):
    alpha = parse_complex(args.alpha)
    x = parse_complex(args.x)
    rep = verify_connector_relations(args.m, args.n, alpha, x, _cfg(args))
    entries = {}
    ok = True
    for name, tol in _CONNECTOR_TOLERANCES.items():
        if name == "gauss_closed_form":
            res = rep["gauss"]["closed_form_residual"]
        else:
            res = rep[name]["residual"]
        entries[name] = {"residual": res, "tolerance": tol, "passed": res <= tol}
        ok = ok and res <= tol
    report["result"] = {
        "m": args.m, "n": args.n,
        "alpha": _pair(alpha), "x": _pair(x),
        "checks": entries, "passed": ok,
    }
    report["diagnostics"]["tail_estimates"] = []
    if not ok:
        report["status"] = "violation"
    lines = ["check              residual      tolerance  status"]
    for name, e in entries.items():
        lines.append(f"{name:<18s} {e['residual']:.3e}  {e['tolerance']:.1e}    "
                     f"{'PASS' if e['passed'] else 'FAIL'}")
    lines.append("PASS" if ok else "FAIL")
    return lines, EXIT_OK if ok else EXIT_VIOLATION


def _cmd_transport(args, report):
    k = parse_index(args.index)
    flavor = TILDE if args.tilde else OHNO
    tr = transport(k, flavor)
    steps = []
    for i, st in enumerate(tr.states):
        entry = {"left": list(st.left), "right": list(st.right)}
        if i < len(tr.moves):
            entry["move"] = tr.moves[i].kind
            entry["relation"] = tr.moves[i].relation
        steps.append(entry)
    payload = {"index": list(k), "flavor": flavor, "moves": len(tr.moves), "steps": steps}
    lines = [f"step  left          right         move   relation"]
    for i, st in enumerate(tr.states):
        mv = tr.moves[i] if i < len(tr.moves) else None
        lines.append(
            f"{i:<5d} {format_index(st.left) or '-':<13s} "
            f"{format_index(st.right) or '-':<13s} "
            f"{mv.kind if mv else '-':<6s} {mv.relation if mv else '-'}"
        )
    code = EXIT_OK
    if args.verify:
        alpha = parse_complex(args.alpha)
        x = parse_complex(args.x)
        check = verify_trace(tr, alpha, x, _cfg(args))
        payload["verification"] = {
            "alpha": _pair(alpha),
            "x": _pair(x),
            "values": [_pair(v) for v in check["values"]],
            "residuals": check["residuals"],
            "tolerances": check["tolerances"],
            "max_residual": check["max_residual"],
            "passed": check["passed"],
        }
        report["diagnostics"]["tail_estimates"] = check["tails"]
        lines.append("")
        lines.append("step  residual      tolerance     status")
        for i, (r, t) in enumerate(zip(check["residuals"], check["tolerances"])):
            lines.append(f"{i:<5d} {r:.6e}  {t:.6e}  {'PASS' if r <= t else 'FAIL'}")
        lines.append("PASS" if check["passed"] else "FAIL")
        if not check["passed"]:
            report["status"] = "violation"
            code = EXIT_VIOLATION
    report["result"] = payload
    return lines, code


_HANDLERS = {
    "dual": _cmd_dual,
    "decompose": _cmd_decompose,
    "eval": _cmd_eval,
    "eval-tilde": _cmd_eval_tilde,
    "ohno": _cmd_ohno,
    "gf-coeffs": _cmd_gf_coeffs,
    "verify-duality": _cmd_verify_duality,
    "verify-ohno": _cmd_verify_ohno,
    "verify-connectors": _cmd_verify_connectors,
    "transport": _cmd_transport,
}


def run(argv: list[str]) -> tuple[dict, list[str], int]:
    """Parse and execute one subcommand; returns (report, lines, exit code)."""
    args = _build_parser().parse_args(argv)
    report = {
        "command": args.command,
        "input": {key: value for key, value in sorted(vars(args).items())
                  if key not in ("command", "json")},
        "result": None,
        "diagnostics": {
            "trunc_N": getattr(args, "trunc", None),
            "conn_M": getattr(args, "conn", None),
            "degree_D": getattr(args, "degree", None),
            "tail_estimates": [],
            "elapsed_ms": None,
        },
        "status": "ok",
    }
    start = time.perf_counter()
    lines, code = _HANDLERS[args.command](args, report)
    report["diagnostics"]["elapsed_ms"] = (time.perf_counter() - start) * 1000.0
    return report, lines, code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, lines, code = run(argv)
    except (DomainError, ConvergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SystemExit as exc:  # argparse errors already printed a message
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    wants_json = "--json" in argv
    if wants_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
