"""Command line front end: evaluate functions, run verification suites,
tabulate/invert transforms and sample densities.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or domain error.
"""

import argparse
import inspect
import json
import sys
from dataclasses import dataclass, field

from . import barnes, densities, laplace, specfun, suites
from .errors import DomainError


@dataclass
class RunConfig:
    """Defaults merged from an optional JSON config file; explicit command
    line flags win."""

    tolerances: dict = field(default_factory=dict)
    jobs: int = 1
    seed: int = 20260808
    fmt: str = "csv"
    dt: float = 1e-3
    t_max: float = 12.0

    @staticmethod
    def load(path):
        cfg = RunConfig()
        if path:
            with open(path) as fh:
                data = json.load(fh)
            cfg.tolerances = dict(data.get("tolerances", {}))
            cfg.jobs = int(data.get("jobs", cfg.jobs))
            cfg.seed = int(data.get("seed", cfg.seed))
            cfg.fmt = data.get("format", cfg.fmt)
            cfg.dt = float(data.get("dt", cfg.dt))
            cfg.t_max = float(data.get("t_max", cfg.t_max))
        return cfg


_EVAL_KEYS = ("beta", "digamma", "trigamma", "prym", "beta-a-lambda",
              "gamma-ratio-log", "si", "ci", "p-kernel", "r22")


def _eval_one(key, x, args):
    if key == "beta":
        return specfun.nielsen_beta(x)
    if key == "digamma":
        return specfun.digamma(x)
    if key == "trigamma":
        return specfun.trigamma(x)
    if key == "prym":
        return specfun.prym_P(x)
    if key == "beta-a-lambda":
        return specfun.beta_a_lambda(x, args.a, args.lam)
    if key == "gamma-ratio-log":
        return specfun.gamma_ratio_log(x, args.a, args.b)
    if key == "si":
        return specfun.sin_cos_integrals(x)[0]
    if key == "ci":
        return specfun.sin_cos_integrals(x)[1]
    if key == "p-kernel":
        return barnes.p_kernel(x, args.n)
    if key == "r22":
        return barnes.r_2_2n(x, args.n)
    raise DomainError(f"unknown function key {key!r}")


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_json(report):
    return json.dumps(report, sort_keys=True, indent=2,
                      default=float) + "\n"


def cmd_eval(args, cfg):
    fmt = args.fmt or cfg.fmt
    values = [(x, _eval_one(args.key, x, args)) for x in args.x]
    if fmt == "json":
        text = _report_json({"function": args.key,
                             "rows": [{"x": x, "value": v}
                                      for x, v in values]})
    else:
        rows = ["x,value"] + [f"{x:.12g},{v:.17g}" for x, v in values]
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return 0


def cmd_check(args, cfg):
    overrides = {}
    sig = inspect.signature(suites.SUITES[args.suite])
    tol = args.tol if args.tol is not None else \
        cfg.tolerances.get(args.suite)
    if tol is not None and "tol" in sig.parameters:
        overrides["tol"] = float(tol)
    if getattr(args, "r", None) is not None and "r" in sig.parameters:
        overrides["r"] = args.r
    if "seed" in sig.parameters:
        overrides["seed"] = args.seed if args.seed is not None else cfg.seed
    if "dt" in sig.parameters:
        overrides["dt"] = cfg.dt
    if "t_max" in sig.parameters:
        overrides["t_max"] = cfg.t_max
    jobs = args.jobs if args.jobs is not None else cfg.jobs
    report = suites.run_suite(args.suite, jobs=jobs, **overrides)
    _emit(_report_json(report), args.out)
    return 0 if report["passed"] else 1


def cmd_invert(args, cfg):
    if args.key != "beta-pow-c":
        raise DomainError(f"unknown transform key {args.key!r}")
    if not args.c > 0:
        raise DomainError("c must be positive")
    dt = args.dt if args.dt is not None else cfg.dt
    t_max = args.tmax if args.tmax is not None else cfg.t_max
    dens = laplace.semigroup_density(args.c, dt, t_max)
    _emit(dens.to_csv(), args.out)
    if args.diag:
        diag = {"methods": ["euler", "gaver-stehfest"],
                "method_spread": dens.method_spread,
                "raw_min": dens.raw_min, "c": args.c,
                "dt": dt, "t_max": t_max}
        with open(args.diag, "w") as fh:
            fh.write(_report_json(diag))
    return 0


def cmd_semigroup(args, cfg):
    dt = args.dt if args.dt is not None else cfg.dt
    t_max = args.tmax if args.tmax is not None else cfg.t_max
    tol = args.tol if args.tol is not None else \
        float(cfg.tolerances.get("semigroup", 1e-4))
    sup = laplace.semigroup_check(args.c, args.d, dt, t_max)
    report = {"c": args.c, "d": args.d, "dt": dt, "t_max": t_max,
              "sup_discrepancy": sup, "tol": tol, "passed": sup < tol}
    _emit(_report_json(report), args.out)
    return 0 if report["passed"] else 1


def cmd_sample(args, cfg):
    spec = densities.DensitySpec(args.family, args.a)
    seed = args.seed if args.seed is not None else cfg.seed
    samples = densities.density_sample(spec, args.count, seed)
    _emit(densities.samples_to_csv(samples), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cmfun",
        description="Special functions, Stieltjes measures and complete-"
                    "monotonicity checks around Nielsen's beta function.")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"),
                        help="output format where applicable")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function on points")
    p_eval.add_argument("key", choices=_EVAL_KEYS)
    p_eval.add_argument("x", type=float, nargs="+")
    p_eval.add_argument("--a", type=float, default=0.5)
    p_eval.add_argument("--b", type=float, default=1.0)
    p_eval.add_argument("--lam", type=float, default=1.0)
    p_eval.add_argument("--n", type=int, default=1)
    p_eval.add_argument("--out")
    p_eval.set_defaults(fn=cmd_eval)

    p_check = sub.add_parser("check", help="run a verification suite")
    p_check.add_argument("suite", choices=sorted(suites.SUITES))
    p_check.add_argument("--tol", type=float)
    p_check.add_argument("--jobs", type=int)
    p_check.add_argument("--seed", type=int)
    p_check.add_argument("--r", type=float,
                         help="order parameter for the counterexample suite")
    p_check.add_argument("--out")
    p_check.set_defaults(fn=cmd_check)

    p_inv = sub.add_parser("invert", help="tabulate an inverse transform")
    p_inv.add_argument("key")
    p_inv.add_argument("--c", type=float, required=True)
    p_inv.add_argument("--dt", type=float)
    p_inv.add_argument("--tmax", type=float)
    p_inv.add_argument("--out")
    p_inv.add_argument("--diag", help="write method diagnostics JSON here")
    p_inv.set_defaults(fn=cmd_invert)

    p_semi = sub.add_parser("semigroup", help="convolution semigroup check")
    p_semi.add_argument("c", type=float)
    p_semi.add_argument("d", type=float)
    p_semi.add_argument("--dt", type=float)
    p_semi.add_argument("--tmax", type=float)
    p_semi.add_argument("--tol", type=float)
    p_semi.add_argument("--out")
    p_semi.set_defaults(fn=cmd_semigroup)

    p_samp = sub.add_parser("sample", help="draw density samples")
    p_samp.add_argument("--family", choices=densities.FAMILIES, required=True)
    p_samp.add_argument("--a", type=float, required=True)
    p_samp.add_argument("--count", type=int, required=True)
    p_samp.add_argument("--seed", type=int)
    p_samp.add_argument("--out")
    p_samp.set_defaults(fn=cmd_sample)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    cfg = RunConfig.load(args.config)
    try:
        return args.fn(args, cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
