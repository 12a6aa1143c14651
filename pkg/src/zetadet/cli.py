"""Command-line front end.

Exit codes: 0 success, 2 usage or config error, 3 continuation failure,
4 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

from . import anomaly, symbolic
from .config import FamilyConfig, load_config
from .engine import spectral_zeta, zeta_at_zero
from .errors import ContinuationFailure

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONTINUATION = 3
EXIT_VERIFY = 4

VERIFY_TARGETS = ("theorem", "corollary", "reduction", "equal-order", "lemma", "zero-anomaly")


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    return f"{x:.15g}"


def _sci(x: float) -> str:
    return f"{x:.3e}"


def _params_dict(params) -> dict:
    return {"K": params.K, "J": params.J, "target_error": params.target_error, "max_K": params.max_K}


def _load(args) -> FamilyConfig:
    cfg = load_config(args.config)
    params = cfg.params
    if getattr(args, "K", None) is not None:
        params = replace(params, K=args.K)
    if getattr(args, "J", None) is not None:
        params = replace(params, J=args.J)
    if getattr(args, "prec_target", None) is not None:
        params = replace(params, target_error=args.prec_target)
    tol = cfg.tolerance if getattr(args, "tol", None) is None else args.tol
    return replace(cfg, params=params, tolerance=tol)


def _ops(cfg: FamilyConfig, spec: str | None, minimum: int) -> list[str]:
    names = cfg.family.names if spec is None else [s.strip() for s in spec.split(",") if s.strip()]
    for n in names:
        if n not in cfg.family.operators:
            raise UsageError(f"unknown operator {n!r}; config has {', '.join(cfg.family.names)}")
    if len(names) < minimum:
        raise UsageError(f"need at least {minimum} operators, got {len(names)}")
    if len(set(names)) != len(names):
        raise UsageError("operator names repeat")
    return names


def cmd_zeta(args, report: dict) -> int:
    cfg = _load(args)
    word = cfg.family[args.op] if args.op in cfg.family.operators else None
    if word is None:
        raise UsageError(f"unknown operator {args.op!r}; config has {', '.join(cfg.family.names)}")
    res = spectral_zeta(word, cfg.family.base, args.s, cfg.params)
    report["results"] = {
        "operator": args.op,
        "s": res.s,
        "value": res.value,
        "derivative": res.ds_value if res.s == 0.0 else None,
        "error_estimate": res.error_estimate,
    }
    report["params"] = _params_dict(res.params)
    lines = [f"zeta_{args.op}({_num(res.s)}) = {_num(res.value)}"]
    if res.s == 0.0:
        lines.append(f"zeta_{args.op}'(0) = {_num(res.ds_value)}")
    lines.append(f"error estimate = {_sci(res.error_estimate)}  (K={res.params.K}, J={res.params.J})")
    report["_text"] = lines
    return EXIT_OK


def cmd_det(args, report: dict) -> int:
    cfg = _load(args)
    if args.op not in cfg.family.operators:
        raise UsageError(f"unknown operator {args.op!r}; config has {', '.join(cfg.family.names)}")
    res = zeta_at_zero(cfg.family[args.op], cfg.family.base, cfg.params)
    logdet = -res.ds_value
    report["results"] = {"operator": args.op, "log_det": logdet, "error_estimate": res.error_estimate}
    report["params"] = _params_dict(res.params)
    report["_text"] = [
        f"log det_zeta({args.op}) = {_num(logdet)}",
        f"error estimate = {_sci(res.error_estimate)}  (K={res.params.K}, J={res.params.J})",
    ]
    return EXIT_OK


def _checks_block(checks: list[anomaly.Residual], report: dict, lines: list[str]) -> int:
    report["checks"] = [c.as_dict() for c in checks]
    width = max(len(c.identity) for c in checks)
    for c in checks:
        flag = "PASS" if c.passed else "FAIL"
        lines.append(
            f"{flag}  {c.identity:<{width}}  residual {_sci(c.residual)}  tol {_sci(c.tolerance)}"
            f"  budget {_sci(c.error_budget)}"
        )
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def cmd_anomaly(args, report: dict) -> int:
    cfg = _load(args)
    names = _ops(cfg, args.ops, 2)
    rep = anomaly.anomaly_report(cfg.family, names, cfg.params, cfg.tolerance)
    report["results"] = {
        "operators": names,
        "orders": rep.orders,
        "log_M": [{"operators": list(k), "log_M": v, "error": rep.errors[k]} for k, v in rep.log_m.items()],
    }
    report["params"] = _params_dict(cfg.params)
    lines = [f"{'operators':<24} {'log M':>22}  error"]
    for k, v in rep.log_m.items():
        lines.append(f"{','.join(k):<24} {_num(v):>22}  {_sci(rep.errors[k])}")
    code = _checks_block(rep.residuals, report, lines)
    report["_text"] = lines
    return code


def cmd_verify(args, report: dict) -> int:
    cfg = _load(args)
    fam, params, tol = cfg.family, cfg.params, cfg.tolerance
    target = args.target
    if target == "theorem":
        checks = [anomaly.verify_theorem(fam, _ops(cfg, args.ops, 2), params, tol)]
    elif target == "corollary":
        names = _ops(cfg, args.ops, 2)
        if args.k is None:
            raise UsageError("corollary needs --k")
        if not 2 <= args.k <= len(names):
            raise UsageError(f"need 2 <= k <= {len(names)}")
        checks = [anomaly.verify_corollary(fam, names, args.k, params, tol)]
    elif target == "reduction":
        rtol = 1e-10 if args.tol is None else args.tol
        checks = [anomaly.verify_reduction(fam, _ops(cfg, args.ops, 3), params, rtol)]
    elif target == "equal-order":
        names = _ops(cfg, args.ops, 2)
        if len(names) != 2:
            raise UsageError("equal-order needs exactly two operators (--ops A,B)")
        checks = [anomaly.verify_equal_order(fam, names[0], names[1], params, tol)]
    elif target == "lemma":
        checks = anomaly.verify_lemma(fam, _ops(cfg, args.ops, 3), params, tol)
    else:
        ztol = 1e-8 if args.tol is None else args.tol
        checks = anomaly.verify_zero_anomaly(fam, _ops(cfg, args.ops, 2), params, ztol)
    report["params"] = _params_dict(params)
    lines: list[str] = []
    code = _checks_block(checks, report, lines)
    report["_text"] = lines
    return code


def cmd_symbolic(args, report: dict) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.k is not None and not 2 <= args.k <= args.n:
        raise UsageError(f"need 2 <= k <= {args.n}")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    res = symbolic.run_suite(args.n, args.trials, args.seed, k=args.k)
    report["seed"] = args.seed
    report["results"] = {k: v for k, v in res.items() if k not in ("checks",)}
    report["checks"] = res["checks"]
    width = max(len(c["identity"]) for c in res["checks"])
    lines = [f"n={args.n} trials={args.trials} seed={args.seed}  false-pass bound {_sci(res['false_pass_bound'])}"]
    for c in res["checks"]:
        flag = "PASS" if c["pass"] else "FAIL"
        lines.append(f"{flag}  {c['identity']:<{width}}  {c['passed']}/{c['trials']} exact")
    for f in res["failures"]:
        lines.append(f"  witness: {f['identity']} orders={f['orders']} entry={f['witness']}")
    report["_text"] = lines
    return EXIT_OK if res["pass"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetadet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, engine=True):
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--timing", action="store_true", help="include wall time in the report")
        if engine:
            p.add_argument("--config", required=True, help="config file or bundled name")
            p.add_argument("--K", type=int, help="starting head cutoff")
            p.add_argument("--J", type=int, help="tail expansion order")
            p.add_argument("--prec-target", type=float, help="target truncation error")

    p = sub.add_parser("zeta", help="spectral zeta value (and derivative at s=0)")
    common(p)
    p.add_argument("--op", required=True)
    p.add_argument("--s", type=float, required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("det", help="log of the zeta-regularized determinant")
    common(p)
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("anomaly", help="anomalies of all sub-tuples plus identity residuals")
    common(p)
    p.add_argument("--ops", required=True, help="comma-separated operator names")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_anomaly)

    p = sub.add_parser("verify", help="one identity check")
    common(p)
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--ops", help="comma-separated operator names (default: all)")
    p.add_argument("--k", type=int, help="subset size for corollary")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("symbolic", help="exact randomized identity checks")
    common(p, engine=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_symbolic)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report: dict = {"command": argv, "checks": [], "seed": None}
    start = time.perf_counter()
    try:
        code = args.func(args, report)
    except (UsageError, ValueError) as exc:  # ConfigError, DomainError, PoleError included
        print(f"zetadet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContinuationFailure as exc:
        print(f"zetadet: continuation failed: {exc}", file=sys.stderr)
        return EXIT_CONTINUATION
    elapsed = time.perf_counter() - start
    text = report.pop("_text", [])
    if args.timing:
        report["runtime_s"] = elapsed
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(text))
        print(f"runtime {elapsed:.3f} s")
    return code


if __name__ == "__main__":
    sys.exit(main())
