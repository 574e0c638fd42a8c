"""Command-line interface.

Every subcommand parses its flags, calls one library routine and formats
the result; numbers are written with 12 significant digits.

Exit codes: 0 success, 2 domain or stationarity error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import reference
from .errors import DomainError, NumericalError, StationarityError
from .innovations import from_name, raw_moments
from .lag1 import lag1_report
from .moments import ModelSpec, check_stationarity, moment_table
from .montecarlo import (
    TABLE1_BETAS,
    TABLE1_FAMILIES,
    SimConfig,
    reports_csv,
    sample_acf1,
    simulate_path,
    table1,
    table1_text,
)
from .region import PARETO_SHAPES, domain_upper, find_regions, sweep_delta
from .validation import max_relative_discrepancy

EXIT_DOMAIN = 2
EXIT_NUMERIC = 3


def _g(x) -> str:
    return format(float(x), ".12g")


def _resolve(args):
    """Innovation spec and model from ``--family`` plus ``--r`` or ``--alpha/--beta``."""
    spec = from_name(args.family)
    lag = getattr(args, "lag", 1)
    if spec.is_scale_family:
        if args.r is not None:
            if args.alpha is not None:
                raise DomainError("--r implies alpha = 1; do not combine it with --alpha")
            return spec.with_alpha(1.0), ModelSpec(args.r, lag)
        if args.beta is None:
            raise DomainError("give --r or --beta")
        alpha = 1.0 if args.alpha is None else args.alpha
        return spec.with_alpha(alpha), ModelSpec(args.beta, lag)
    if args.r is not None or args.alpha is not None:
        raise DomainError(f"{spec.name} is not a scale family: use --beta only")
    if args.beta is None:
        raise DomainError("give --beta")
    return spec, ModelSpec(args.beta, lag)


def _stationarity_message(spec, model) -> str:
    if spec.is_scale_family:
        r = spec.alpha * model.beta
        return f"stationarity violated: r = {_g(r)} >= r_max = (1/mu_4)^(1/4) = {_g(domain_upper(spec))}"
    return f"stationarity violated: beta^4*mu_4 >= 1 (need |beta| < {_g(raw_moments(spec)[4] ** -0.25)})"


def _analytic(args, fn):
    spec, model = _resolve(args)
    try:
        return spec, model, fn(spec, model)
    except StationarityError as exc:
        raise StationarityError(_stationarity_message(spec, model)) from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_moments(args) -> str:
    spec, model, table = _analytic(args, moment_table)
    st = check_stationarity(model, spec)
    if args.format == "json":
        d = asdict(table)
        d.update(family=spec.name, alpha=spec.alpha, beta=model.beta, lyapunov_gamma=st.lyapunov_gamma)
        return _dump(d)
    lines = [f"family = {spec.name}", f"beta = {_g(model.beta)}"]
    if spec.alpha is not None:
        lines.append(f"alpha = {_g(spec.alpha)}")
    lines += [f"exe[{n}] = {_g(table.exe[n])}" for n in range(1, 5)]
    lines += [f"ex[{n}] = {_g(table.ex[n])}" for n in range(1, 5)]
    lines += [
        f"variance = {_g(table.variance)}",
        f"excess_kurtosis = {_g(table.excess_kurtosis)}",
        f"lyapunov_gamma = {_g(st.lyapunov_gamma)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_acf1(args) -> str:
    spec, model, rep = _analytic(args, lag1_report)
    d = asdict(rep)
    d["taylor_holds"] = rep.taylor_holds
    if args.format == "json":
        d.update(family=spec.name, beta=model.beta)
        return _dump(d)
    # scale families depend on (alpha, beta) only through r
    out = [f"family = {spec.name}"]
    if rep.r is None:
        out.append(f"beta = {_g(model.beta)}")
    for key in ("r", "rho1", "rho1_sq", "delta", "excess_kurtosis"):
        if d[key] is not None:
            out.append(f"{key} = {_g(d[key])}")
    out.append(f"taylor_holds = {str(rep.taylor_holds).lower()}")
    return "\n".join(out) + "\n"


def cmd_kurtosis(args) -> str:
    spec, model, table = _analytic(args, moment_table)
    if args.format == "json":
        return _dump({"family": spec.name, "beta": model.beta, "excess_kurtosis": table.excess_kurtosis})
    return f"{_g(table.excess_kurtosis)}\n"


def cmd_region(args) -> str:
    region = find_regions(args.family, grid_points=args.grid, tol=args.tol, source=args.source)
    return _dump(region.to_dict())


def cmd_sweep(args) -> str:
    if args.pareto_nus is not None:
        nus = [float(v) for v in args.pareto_nus.split(",") if v.strip()]
        rows = sweep_delta(nus=nus, grid_points=args.grid)
    elif args.family is not None:
        rows = sweep_delta(args.family, grid_points=args.grid)
    else:
        raise DomainError("give --family or --pareto-nus")
    lines = ["family,r,delta,kurtosis"]
    lines += [f"{row.family},{_g(row.r)},{_g(row.delta)},{_g(row.kurtosis)}" for row in rows]
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> str:
    spec, model = _resolve(args)
    config = SimConfig(model, spec, n_obs=args.n_obs, burn_in=args.burn_in, seed=args.seed)
    if not config.stationary:
        print("warning: beta^4*mu_4 >= 1, the model is not second-order stationary in X^2", file=sys.stderr)
    path = simulate_path(config)
    if args.format == "json":
        return _dump({
            "family": spec.name, "alpha": spec.alpha, "beta": model.beta, "lag": model.lag,
            "seed": args.seed, "burn_in": args.burn_in, "stationary": config.stationary,
            "acf1_abs": sample_acf1(path, "abs"), "acf1_square": sample_acf1(path, "square"),
            "series": path.tolist(),
        })
    lines = ["t,x"] + [f"{t},{_g(x)}" for t, x in enumerate(path)]
    return "\n".join(lines) + "\n"


def cmd_table1(args) -> str:
    betas = TABLE1_BETAS if args.beta is None else (args.beta,)
    families = TABLE1_FAMILIES if args.family is None else (args.family,)
    reports = table1(
        seed=args.seed, n_reps=args.reps, n_obs=args.n_obs, burn_in=args.burn_in,
        betas=betas, families=families, ci_method=args.ci,
    )
    if args.format == "csv":
        return reports_csv(reports)
    if args.format == "json":
        return _dump([asdict(r) for r in reports])
    return table1_text(reports)


def cmd_verify(args) -> str:
    gaps = max_relative_discrepancy(args.grid)
    lines = ["family,role,max_rel_error"]
    lines += [f"{fam},{role},{gap:.3e}" for (fam, role), gap in gaps.items()]
    worst = max(gaps.values())
    lines.append(f"max,all,{worst:.3e}")
    if worst >= args.threshold:
        args.exit_code = EXIT_NUMERIC
    return "\n".join(lines) + "\n"


def cmd_formulas(args) -> str:
    return reference.export_json() + "\n"


def _add_selector(p, lag=False):
    p.add_argument("--family", required=True, help="catalog name, e.g. exp, uniform0a, pareto12, normal, t9")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--r", type=float, help="reduced coordinate alpha*beta (scale families, alpha = 1)")
    g.add_argument("--beta", type=float, help="model coefficient")
    p.add_argument("--alpha", type=float, help="innovation scale (scale families, default 1)")
    if lag:
        p.add_argument("--lag", type=int, default=1)


def _add_format(p, choices=("text", "json"), default="text"):
    p.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilinear-taylor",
        description="Lag-1 autocorrelation, kurtosis and Taylor-property tools for simple bilinear models.",
    )
    parser.add_argument("-o", "--output", help="write to this file instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="E(X^n eps^n), E(X^n), variance and kurtosis")
    _add_selector(p)
    _add_format(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("acf1", help="closed-form lag-1 autocorrelations of X and X^2")
    _add_selector(p)
    _add_format(p)
    p.set_defaults(func=cmd_acf1)

    p = sub.add_parser("kurtosis", help="excess kurtosis of X")
    _add_selector(p)
    _add_format(p)
    p.set_defaults(func=cmd_kurtosis)

    p = sub.add_parser("region", help="certified intervals of r where the Taylor property holds (JSON)")
    p.add_argument("--family", required=True)
    p.add_argument("--tol", type=float, default=5e-9)
    p.add_argument("--grid", type=int, default=100_000)
    p.add_argument("--source", choices=("analytic", "polynomial"), default="analytic")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("sweep", help="CSV of (r, delta, kurtosis) over the stationarity interval")
    p.add_argument("--family")
    p.add_argument("--pareto-nus", help="comma-separated Pareto shapes sharing one grid, e.g. "
                   + ",".join(f"{v:g}" for v in PARETO_SHAPES))
    p.add_argument("--grid", type=int, default=1000)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="simulate a path (CSV t,x or JSON)")
    _add_selector(p, lag=True)
    p.add_argument("--n-obs", type=int, default=500)
    p.add_argument("--burn-in", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p, ("csv", "json"), "csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table1", help="replication study for symmetric innovations")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--reps", type=int, default=60)
    p.add_argument("--n-obs", type=int, default=500)
    p.add_argument("--burn-in", type=int, default=500)
    p.add_argument("--ci", choices=("wald", "clopper-pearson"), default="wald")
    p.add_argument("--beta", type=float, help="run a single beta row")
    p.add_argument("--family", help="run a single family column")
    _add_format(p, ("text", "csv", "json"))
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="generic analytics vs published formulas")
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--threshold", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("formulas", help="export the published formula tables as JSON")
    p.set_defaults(func=cmd_formulas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.exit_code = 0
    try:
        text = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
