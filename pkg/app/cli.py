"""
expbound 的命令列介面。

    python -m app bound --alpha 3 --beta 1 --out output/cert.json
    python -m app verify --cert output/cert.json
    python -m app diagnose --cert output/cert.json
    python -m app lemmas --suite feldman
    python -m app corollary4 --numeric
    python -m app hp-table --nodes 0,1,2 --params 2,2,2

exit code：0 成功、1 被拒絕 / 驗證失敗 / 內部錯誤、2 用法或解析錯誤。
"""

from __future__ import annotations

import argparse
import json
import logging
from typing import Any, Dict, List, Optional, Sequence

from skills.settings import MIN_PRECISION

from .main import create_app, setup_logging
from .orchestrator import AgentRequest, AgentResponse, build_bound_request, build_verify_request

logger = logging.getLogger("ExpBoundCLI")

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2


# ========= argparse ========= #

def _precision(text: str) -> int:
    bits = int(text)
    if bits < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be >= {MIN_PRECISION} bits")
    return bits


def _cap(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("caps must be >= 1")
    return value


def _csv(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable JSON output.")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging.")
    common.add_argument("--precision", type=_precision, default=None, help="Working precision in bits (default: config, 256).")

    parser = argparse.ArgumentParser(prog="expbound", description="Certified lower bounds for |e^beta - alpha|.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="Search (or check) parameters and emit a certificate.")
    p.add_argument("--alpha", required=True, help="p/q or a+b*sqrt(-d)")
    p.add_argument("--beta", required=True, help="p/q or a+b*sqrt(-d), nonzero")
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--E", default=None, help="Rational E > 1 (p/q or decimal).")
    p.add_argument("--max-K", dest="max_K", type=_cap, default=None)
    p.add_argument("--max-L", dest="max_L", type=_cap, default=None)
    p.add_argument("--logA", default=None, help="Override log A (must be admissible).")
    p.add_argument("--logB", default=None, help="Override log B (must be admissible).")
    p.add_argument("--out", default=None, help="Write the certificate JSON here.")
    p.add_argument("--save", action="store_true", help="Write the certificate under certificates_dir (config).")

    p = sub.add_parser("verify", parents=[common], help="Recheck a certificate from scratch.")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("diagnose", parents=[common], help="Liouville lower bound vs analytic upper bound.")
    p.add_argument("--cert", default=None)
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--E", default=None)
    p.add_argument("--system", choices=["auto", "minors", "dual"], default="auto")

    p = sub.add_parser("lemmas", parents=[common], help="Run lemma suites.")
    p.add_argument("--suite", default="all")
    p.add_argument("--trials", type=_cap, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("corollary4", parents=[common], help="Asymptotic constant for imaginary quadratic alpha, beta.")
    p.add_argument("--numeric", action="store_true", help="Also run the numeric optimizer.")
    p.add_argument("--beta-abs", dest="beta_abs", action="append", default=None, help="Finite |beta| report (repeatable).")

    p = sub.add_parser("hp-table", parents=[common], help="Dump Hermite-Pade coefficients p_{l,k}.")
    p.add_argument("--nodes", type=_csv, required=True, help="Comma-separated rationals.")
    p.add_argument("--params", type=_csv, required=True, help="Comma-separated positive integers.")
    p.add_argument("--method", choices=["lambda", "convolution"], default="lambda")
    return parser


def _to_request(args: argparse.Namespace) -> AgentRequest:
    if args.command == "bound":
        return build_bound_request(
            alpha=args.alpha,
            beta=args.beta,
            K=args.K,
            L=args.L,
            E=args.E,
            max_K=args.max_K,
            max_L=args.max_L,
            precision=args.precision,
            logA=args.logA,
            logB=args.logB,
            out=args.out,
            save=args.save,
        )
    if args.command == "verify":
        return build_verify_request(cert_path=args.cert, precision=args.precision)
    if args.command == "diagnose":
        payload: Dict[str, Any] = {"system": args.system, "precision": args.precision}
        if args.cert:
            payload["cert"] = args.cert
        else:
            payload.update(alpha=args.alpha, beta=args.beta, K=args.K, L=args.L, E=args.E)
        return AgentRequest(type="diagnose", payload=payload)
    if args.command == "lemmas":
        return AgentRequest(type="lemmas", payload={"suite": args.suite, "trials": args.trials, "seed": args.seed})
    if args.command == "corollary4":
        return AgentRequest(
            type="corollary4",
            payload={"numeric": args.numeric, "precision": args.precision, "beta_abs": args.beta_abs or []},
        )
    return AgentRequest(
        type="hp_table",
        payload={"nodes": args.nodes, "params": args.params, "method": args.method},
    )


# ========= 輸出 ========= #

def _print_certificate(cert: Dict[str, Any]) -> None:
    rounding = cert.get("rounding", {})
    print(f"alpha = {cert['alpha']}, beta = {cert['beta']}, D = {cert['D']}")
    print(f"K = {cert['K']}, L = {cert['L']}, E = {cert['E']}")
    for name in ("logA", "logB", "lhs", "rhs", "log_eps_lower"):
        print(f"  {name:<14}= {cert[name]}  (rounded {rounding.get(name, 'nearest')})")
    for name, value in cert.get("terms", {}).items():
        print(f"    {name:<12}{value}  (rounded up)")
    print(f"=> log|e^beta - alpha| >= {cert['log_eps_lower']}, i.e. |e^beta - alpha| >= E^(-{cert['K'] * cert['L']})")


def _print_checks(suites: List[Dict[str, Any]]) -> None:
    for suite in suites:
        print(f"[{suite['name']}] {'PASS' if suite['passed'] else 'FAIL'}")
        for check in suite["checks"]:
            mark = "ok  " if check["passed"] else "FAIL"
            detail = f"  {check['detail']}" if check.get("detail") else ""
            print(f"  {mark} {check['name']} ({check['count']}){detail}")


def _print_plain(command: str, res: AgentResponse) -> None:
    data = res.data or {}
    if not res.ok:
        print(f"error ({res.error_kind}): {res.error}")
        for name, value in (data.get("terms") or {}).items():
            print(f"    {name:<12}{value}")
        if "report" in data:
            _print_checks([data["report"]])
        if "suites" in data:
            _print_checks(data["suites"])
        return

    if command == "bound":
        _print_certificate(data["certificate"])
        if "path" in data:
            print(f"certificate written to {data['path']}")
    elif command == "verify":
        _print_checks([data["report"]])
    elif command == "diagnose":
        d = data["diagnostic"]
        print(f"K = {d['K']}, L = {d['L']}, E = {d['E']}, mu = {d['mu']} ({d['source']})")
        print(f"  log H(M0)     = {d['log_height']}  (rounded up)")
        print(f"  log G exact   = {d['log_g']}  (nearest)")
        print(f"  lower bound   = {d['lower']}  (rounded down)")
        print(f"  upper bound   = {d['upper']}  (rounded up)")
        print(f"  gap           = {d['gap']}  (rounded down)")
        print(f"  contradiction = {d['contradiction']}, eps < E^(-KL) = {d['upper_hypothesis_holds']}")
    elif command == "lemmas":
        _print_checks(data["suites"])
    elif command == "corollary4":
        c = data["closed_form"]
        print(f"E        ~ {c['E']}  (nearest)")
        print(f"c1       ~ {c['c1']}  (nearest)")
        print(f"c2       ~ {c['c2']}  (nearest)")
        print(f"constant ~ {c['objective']}  (nearest)")
        if "numeric" in data:
            print(f"numeric constant ~ {data['numeric']['objective']}, relative gap {data['relative_gap']}")
        for report in data.get("finite_size", []):
            print(
                f"|beta| = {report['beta_abs']}: K = {report['K']}, L = {report['L']}, "
                f"exponent ~ {report['exponent']}, normalised margin ~ {report['normalised_margin']}"
            )
        known = ", ".join(f"{name} {value}" for name, value in data["historical_constants"].items())
        print(f"alpha, beta in Z, for comparison: {known}")
    elif command == "hp-table":
        print(f"sigma = {data['sigma']}, method = {data['method']}, ord R >= {data['order']}")
        for ell, row in enumerate(data["rows"]):
            print(f"  l={ell} x={row['node']} n={row['n']}: " + ", ".join(row["p"]))


def _exit_code(res: AgentResponse) -> int:
    if res.ok:
        return EXIT_OK
    return EXIT_USAGE if res.error_kind == "usage" else EXIT_REJECTED


# ========= 入口 ========= #

def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse：--help 是 0，用法錯誤是 2
        return int(e.code or 0)

    setup_logging(logging.DEBUG if args.verbose else logging.WARNING)
    orchestrator = create_app()
    res = orchestrator.handle(_to_request(args))

    if args.json:
        body = {"ok": res.ok, "data": res.data, "error": res.error, "error_kind": res.error_kind}
        print(json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        _print_plain(args.command, res)
    if not res.ok:
        logger.info(f"{args.command} failed ({res.error_kind}): {res.error}")
    return _exit_code(res)


__all__ = ["EXIT_OK", "EXIT_REJECTED", "EXIT_USAGE", "build_parser", "run"]
