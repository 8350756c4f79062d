"""Command-line front door: one subcommand per computation or audit.

Reports are CSV (17 significant digits, header row) or JSON carrying the
full config for provenance.  Exit codes: 0 success, 1 audit regression
or failed audit, 2 usage error.  Reports contain no timestamps, so a
fixed config yields byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import audits, config, simulate
from .cumulants import a_coeff, cumulant_explicit
from .dickman import build_rho_table, dickman_cdf, dickman_density, rho
from .exact_dist import KappaSeq, pmf

EXIT_OK = 0
EXIT_REGRESSION = 1
EXIT_USAGE = 2


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit(args, header, rows) -> None:
    out = sys.stdout
    close = False
    if args.output:
        path = args.output
        outdir = os.environ.get("DICKMANLAB_OUTDIR")
        if outdir and not os.path.isabs(path):
            path = os.path.join(outdir, path)
        out = open(path, "w")
        close = True
    try:
        if args.format == "json":
            cfg = {k: v for k, v in vars(args).items()
                   if k not in ("func", "output", "format") and v is not None}
            payload = {
                "command": args.command,
                "config": cfg,
                "rows": [dict(zip(header, r)) for r in rows],
            }
            json.dump(payload, out, indent=2, default=_fmt)
            out.write("\n")
        else:
            out.write(",".join(header) + "\n")
            for r in rows:
                out.write(",".join(_fmt(v) for v in r) + "\n")
    finally:
        if close:
            out.close()


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _kappa(x: float, mode: str | None) -> KappaSeq:
    if mode is None:
        mode = "exact-multiple" if float(x).is_integer() else "floor"
    if x < 1.0:
        print(f"warning: x={x} < 1, kappa need not be strictly increasing",
              file=sys.stderr)
    return KappaSeq(x, mode=mode)


def _table(args):
    return build_rho_table(x_max=getattr(args, "xmax", 30.0),
                           step=getattr(args, "step", 1e-3))


def _audit_rows(rows):
    return [r.astuple() for r in rows]


def _golden_gate(args, name: str, constant: float) -> int:
    """Compare one freshly computed constant against the golden record."""
    if args.golden == "off":
        return EXIT_OK
    if args.golden == "regenerate":
        try:
            stored = config.load_golden()
        except FileNotFoundError:
            stored = {}
        stored[name] = {"constant": constant, "grid_hash": config.grid_hash()}
        config.save_golden({k: v["constant"] for k, v in stored.items()})
        return EXIT_OK
    golden = config.load_golden()
    problems = audits.check_golden({name: constant}, golden)
    for p in problems:
        print(f"golden regression: {p}", file=sys.stderr)
    return EXIT_REGRESSION if problems else EXIT_OK


# ---------------------------------------------------------------- subcommands

def cmd_rho(args) -> int:
    table = _table(args)
    rows = [(x, rho(table, x), dickman_density(table, x), dickman_cdf(table, x))
            for x in args.x]
    _emit(args, ("x", "rho", "density", "cdf"), rows)
    return EXIT_OK


def cmd_pmf(args) -> int:
    dist = pmf(args.m, args.n, mode=args.mode)
    rows = [(v, float(p)) for v, p in enumerate(dist.probs) if p != 0]
    _emit(args, ("value", "probability"), rows)
    return EXIT_OK


def cmd_llt_table(args) -> int:
    table = _table(args)
    kappa = _kappa(args.x, args.kappa_mode)
    rows = audits.llt_table(kappa, args.n, table)
    out = [(r.n, r.lhs, r.envelope, abs(r.lhs - r.envelope)) for r in rows]
    _emit(args, ("n", "n_times_prob", "target", "abs_error"), out)
    return EXIT_OK


def cmd_stimabase(args) -> int:
    kappa = _kappa(args.x, args.kappa_mode)
    pairs = [(args.m, args.n)] if args.m is not None else config.stimabase_pairs()
    rows = [audits.stimabase_check(m, n, kappa) for m, n in pairs]
    _emit(args, audits.AuditRow.FIELDS, _audit_rows(rows))
    return _golden_gate(args, "stimabase", max(r.ratio for r in rows))


def cmd_w2(args) -> int:
    table = _table(args)
    pairs = [(args.m, args.n)] if args.m is not None else config.W2_PAIRS
    rows = [audits.w2_check(m, n, table) for m, n in pairs]
    _emit(args, audits.AuditRow.FIELDS, _audit_rows(rows))
    need = 0.0
    from .spectral import Envelope
    for r in rows:
        L = math.log(r.n / r.m)
        excess = r.lhs - 1.0 / L
        if excess > 0.0:
            need = max(need, math.log1p(excess) / (Envelope(r.m, r.n)._bracket * L * L))
    return _golden_gate(args, "w2", need)


def cmd_zs(args) -> int:
    table = _table(args)
    from .exact_dist import power_sum_scan
    powers = power_sum_scan(args.n)
    rows = [audits.zs_check(n, table, power=powers[n]) for n in sorted(powers)]
    out = [(r.n, r.lhs, r.envelope, abs(r.lhs - r.envelope)) for r in rows]
    _emit(args, ("n", "l2_integral", "limit", "gap"), out)
    return EXIT_OK


def cmd_lemmino(args) -> int:
    kappa = _kappa(args.x, args.kappa_mode)
    ok = audits.lemmino_check(args.x, args.eps, args.m, args.n, kappa)
    _emit(args, ("m", "n", "x", "eps", "zero_probability"),
          [(args.m, args.n, args.x, args.eps, ok)])
    return EXIT_OK if ok else EXIT_REGRESSION


def cmd_cov_audit(args) -> int:
    kappa = _kappa(args.x, args.kappa_mode)
    if args.m is not None:
        pairs = [(args.m, args.n)]
    elif args.regime == "diag":
        pairs = config.cov_diag_pairs()
    elif args.regime == "near":
        pairs = audits.cov_near_pairs(args.x, config.COV_EPS)
    else:
        pairs = config.cov_far_pairs()
    rows = audits.covariance_audit(kappa, pairs, regime=args.regime)
    _emit(args, audits.AuditRow.FIELDS, _audit_rows(rows))
    return _golden_gate(args, f"cov_{args.regime}", max(r.ratio for r in rows))


def cmd_cumulants(args) -> int:
    poly = cumulant_explicit(args.n)
    rows = [("coeff", args.n, i, str(c)) for i, c in enumerate(poly.coeffs)]
    rows += [("a", args.n, k, str(a_coeff(k, args.n))) for k in range(args.n + 1)]
    _emit(args, ("kind", "n", "index", "value"), rows)
    return EXIT_OK


def _seeds(args) -> list[int]:
    return [args.seed + i for i in range(args.paths)]


def cmd_aslt(args) -> int:
    kappa = _kappa(args.x, args.kappa_mode)
    rows = []
    for i, s in enumerate(_seeds(args)):
        est = simulate.simulate_path(kappa, args.N, s, stream=i)
        rows.append((i, est.seed, est.N, est.hits, est.log_avg))
    _emit(args, ("path", "seed", "N", "hits", "log_avg"), rows)
    return EXIT_OK


def cmd_estimate_gamma(args) -> int:
    gamma_est, raw_mean = simulate.estimate_gamma(args.N, _seeds(args))
    _emit(args, ("N", "paths", "gamma_estimate", "mean_log_avg"),
          [(args.N, args.paths, gamma_est, raw_mean)])
    return EXIT_OK


def cmd_estimate_rho(args) -> int:
    est = simulate.estimate_rho(args.x, args.N, _seeds(args))
    _emit(args, ("x", "N", "paths", "rho_estimate"),
          [(args.x, args.N, args.paths, est)])
    return EXIT_OK


def cmd_dispersion(args) -> int:
    rows = simulate.dispersion_diagnostic(args.x, args.N, _seeds(args))
    _emit(args, ("N", "std_log_avg"), rows)
    return EXIT_OK


# -------------------------------------------------------------------- parser

def _add_common(p, golden=False, sim=False):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="output file (relative paths resolve "
                                    "against $DICKMANLAB_OUTDIR)")
    if golden:
        p.add_argument("--golden", choices=("off", "check", "regenerate"),
                       default="off")
    if sim:
        p.add_argument("--N", type=int, default=10**6)
        p.add_argument("--seed", type=int, default=20260823)
        p.add_argument("--paths", type=int, default=32)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dickmanlab")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="Dickman rho, density and CDF values")
    p.add_argument("--x", type=lambda s: [float(v) for v in s.split(",")],
                   required=True)
    p.add_argument("--xmax", type=float, default=30.0)
    p.add_argument("--step", type=float, default=1e-3)
    _add_common(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("pmf", help="exact law of the weighted Bernoulli sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--mode", choices=("float", "exact"), default="float")
    _add_common(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("llt-table", help="point-probability convergence table")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--n", type=_int_list, default=list(config.LLT_N_LIST))
    p.add_argument("--kappa-mode", choices=("floor", "round", "exact-multiple"))
    p.add_argument("--xmax", type=float, default=30.0)
    p.add_argument("--step", type=float, default=1e-3)
    _add_common(p)
    p.set_defaults(func=cmd_llt_table)

    p = sub.add_parser("stimabase", help="point estimate vs window-mass audit")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--kappa-mode", choices=("floor", "round", "exact-multiple"))
    _add_common(p, golden=True)
    p.set_defaults(func=cmd_stimabase)

    p = sub.add_parser("w2", help="Kolmogorov distance vs envelope audit")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--xmax", type=float, default=30.0)
    p.add_argument("--step", type=float, default=1e-3)
    _add_common(p, golden=True)
    p.set_defaults(func=cmd_w2)

    p = sub.add_parser("zs", help="L2 characteristic-function integral checkpoints")
    p.add_argument("--n", type=_int_list, default=list(config.ZS_N_LIST))
    p.add_argument("--xmax", type=float, default=30.0)
    p.add_argument("--step", type=float, default=1e-3)
    _add_common(p)
    p.set_defaults(func=cmd_zs)

    p = sub.add_parser("lemmino", help="zero-probability band check")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa-mode", choices=("floor", "round", "exact-multiple"))
    _add_common(p)
    p.set_defaults(func=cmd_lemmino)

    p = sub.add_parser("cov-audit", help="covariance bound audit by regime")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--regime", choices=("diag", "near", "far"), default="far")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--kappa-mode", choices=("floor", "round", "exact-multiple"))
    _add_common(p, golden=True)
    p.set_defaults(func=cmd_cov_audit)

    p = sub.add_parser("cumulants", help="exact cumulant polynomial tables")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_cumulants)

    p = sub.add_parser("aslt", help="per-path log-average simulation")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--kappa-mode", choices=("floor", "round", "exact-multiple"))
    _add_common(p, sim=True)
    p.set_defaults(func=cmd_aslt)

    p = sub.add_parser("estimate-gamma", help="Euler constant estimator")
    _add_common(p, sim=True)
    p.set_defaults(func=cmd_estimate_gamma)

    p = sub.add_parser("estimate-rho", help="rho(x) ratio estimator")
    p.add_argument("--x", type=float, required=True)
    _add_common(p, sim=True)
    p.set_defaults(func=cmd_estimate_rho)

    p = sub.add_parser("dispersion", help="across-path dispersion diagnostic")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--N", type=_int_list, default=[10**4, 10**6])
    p.add_argument("--seed", type=int, default=20260823)
    p.add_argument("--paths", type=int, default=32)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_dispersion)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command in ("stimabase", "w2", "cov-audit") \
            and getattr(args, "m", None) is not None \
            and getattr(args, "n", None) is None:
        ap.error("--m requires --n")
    try:
        return args.func(args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
