"""``bdt`` command-line interface.

Exit codes: 0 success, 1 fixture failure, 2 usage or parameter error,
3 degenerate computation (e.g. all-zero likelihood), 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import distributions as dist
from . import fixtures, reporting
from .diagnostics import DiagnosticTest, bayes_factor_negative, bayes_factor_positive, npv, ppv
from .errors import DegenerateComputationError, InvalidParameterError
from .estimation import binomial_mle_closed, binomial_mle_numeric, grid_map_equals_mle
from .evidence import INFINITE_EVIDENCE, classify_2ln_bf, classify_bf
from .grid import nearest_grid_estimate, posterior, posterior_mean, posterior_mode
from .network import (
    FIG4_END,
    FIG4_GROUPS,
    FIG4_RATE,
    FIG4_SAMPLES,
    PRESETS,
    convergence_table,
    preset_dag,
    random_dag,
)

EXIT_OK = 0
EXIT_FIXTURE_FAILURE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        reporting.write_text(path, text)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + ("lambda" if n == "lam" else "M" if n == "m_max" else n.replace("_", "-"))
                          for n in missing)
        raise UsageError(f"missing required option(s) for this mode: {flags}")


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_dist(args) -> int:
    family = args.family
    if family == "uniform":
        _require(args, "m_max")
        pmf = lambda m: dist.uniform_pmf(args.m_max, m)
        moments = lambda: dist.uniform_moments(args.m_max)
    elif family == "binomial":
        _require(args, "n", "p")
        pmf = lambda m: dist.binomial_pmf(args.n, args.p, m)
        moments = lambda: dist.binomial_moments(args.n, args.p)
    elif family == "poisson":
        _require(args, "lam")
        pmf = lambda m: dist.poisson_pmf(args.lam, m)
        moments = lambda: dist.poisson_moments(args.lam)
    else:
        _require(args, "kappa", "p")
        pmf = lambda m: dist.negbinom_pmf(args.kappa, args.p, m)
        moments = lambda: dist.negbinom_moments(args.kappa, args.p)

    if args.m is None and not args.moments:
        raise UsageError("give --m (pmf value) and/or --moments")
    if args.m is not None:
        print(reporting.fmt(pmf(args.m)))
    if args.moments:
        mean, var = moments()
        print(f"mean={reporting.fmt(mean)} variance={reporting.fmt(var)}")
    return EXIT_OK


def cmd_posterior(args) -> int:
    prior, model = reporting.load_problem(args.spec)
    table = posterior(prior, model)
    _emit(reporting.posterior_csv(table), args.out)
    mode, _ = posterior_mode(table)
    print(f"# marginal={table.marginal_likelihood:.6f} mean={posterior_mean(table):.3f} "
          f"mode={mode:.3f} nearest={nearest_grid_estimate(table):.3f}")
    return EXIT_OK


def _fmt_ratio(value, digits: int) -> str:
    return "inf" if value is INFINITE_EVIDENCE or value == math.inf else f"{value:.{digits}f}"


def _evidence_label(bf) -> str:
    if bf is not INFINITE_EVIDENCE and bf == 0.0:
        return "Decisive (for alternative)"
    return classify_bf(bf).category.label


def cmd_diagnostic(args) -> int:
    test = DiagnosticTest(args.sens, args.spec, args.prev)
    positive = ppv(test)
    bf_pos = bayes_factor_positive(test, allow_infinite=True)
    bf_neg = bayes_factor_negative(test, allow_infinite=True)
    prior_odds = math.inf if test.prevalence == 1.0 else test.prevalence / (1.0 - test.prevalence)
    if bf_pos is INFINITE_EVIDENCE:
        post_odds = math.inf if test.prevalence > 0.0 else 0.0
    else:
        post_odds = bf_pos * prior_odds if prior_odds != math.inf else math.inf
    print(f"ppv={positive:.3f} bf={_fmt_ratio(bf_pos, 3)} evidence={_evidence_label(bf_pos)}")
    print(f"npv={npv(test):.6f} bf_negative={_fmt_ratio(bf_neg, 6)} "
          f"prior_odds={_fmt_ratio(prior_odds, 6)} posterior_odds={_fmt_ratio(post_odds, 4)}")
    if args.plot:
        reporting.prior_posterior_bars(args.plot, test.prevalence, positive)
    return EXIT_OK


def cmd_bf(args) -> int:
    report = classify_2ln_bf(args.bf) if args.log_scale else classify_bf(args.bf)
    print(report.describe())
    print(f"2ln(BF)={report.two_ln_bf:.3f} scale={report.scale.value}")
    return EXIT_OK


def cmd_mle(args) -> int:
    closed = binomial_mle_closed(args.m, args.n)
    numeric = binomial_mle_numeric(args.m, args.n, args.tol)
    print(f"closed-form theta_hat={closed.theta_hat:.6f} loglik={closed.log_likelihood_at_max:.6f}")
    print(f"numeric theta_hat={numeric.theta_hat:.6f} loglik={numeric.log_likelihood_at_max:.6f} "
          f"iterations={numeric.iterations}")
    if args.grid:
        try:
            thetas = [float(t) for t in args.grid.split(",")]
        except ValueError:
            raise UsageError(f"--grid must be comma-separated numbers, got {args.grid!r}") from None
        map_theta, mle_theta, equal = grid_map_equals_mle(args.m, args.n, thetas)
        print(f"grid map={map_theta:.6f} nearest_mle={mle_theta:.6f} equal={str(equal).lower()}")
    return EXIT_OK


def cmd_dag(args) -> int:
    if args.preset:
        if args.n is not None or args.edge_prob is not None:
            raise UsageError("--preset cannot be combined with --n/--edge-prob")
        dag = preset_dag(args.preset, args.seed)
    else:
        _require(args, "n", "edge_prob")
        dag = random_dag(args.n, args.edge_prob, args.seed)
    _emit(dag.to_dot(), args.out)
    if args.csv:
        reporting.write_text(args.csv, dag.to_edge_csv())
    if args.out is not None:
        print(f"nodes={dag.n} edges={len(dag.edges)} seed={args.seed}")
    return EXIT_OK


def cmd_converge(args) -> int:
    if args.preset:
        if args.start is not None or args.end is not None:
            raise UsageError("--preset cannot be combined with --start/--end")
        curves = convergence_table(FIG4_GROUPS, FIG4_END, FIG4_RATE, FIG4_SAMPLES)
    else:
        _require(args, "start", "end")
        samples = FIG4_SAMPLES
        if args.samples:
            try:
                samples = tuple(int(s) for s in args.samples.split(","))
            except ValueError:
                raise UsageError(f"--samples must be comma-separated integers, got {args.samples!r}") from None
        curves = convergence_table([(args.group, args.start)], args.end, args.rate, samples)
    _emit(reporting.convergence_csv(curves), args.out)
    if args.plot:
        reporting.convergence_panels(args.plot, curves)
    return EXIT_OK


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def cmd_paper_fixtures(args) -> int:
    results = fixtures.run(args.only)
    failed = [r for r in results if not r.passed]
    if args.json:
        doc = {"fixtures": [r.to_dict() for r in results],
               "passed": len(results) - len(failed), "failed": len(failed)}
        print(json.dumps(doc, indent=2))
    else:
        width = max((len(r.id) for r in results), default=10)
        print(f"{'status':6}  {'fixture':{width}}  {'expected':>12}  {'computed':>14}  {'tolerance':>9}")
        for r in results:
            status = _color("PASS", "32") if r.passed else _color("FAIL", "31")
            print(f"{status:6}  {r.id:{width}}  {r.expected:12.6g}  {r.computed:14.8g}  {r.tolerance:9.2g}")
        print(f"{len(results) - len(failed)}/{len(results)} fixtures passed")
    return EXIT_FIXTURE_FAILURE if failed else EXIT_OK


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdt", description="Discrete Bayesian inference toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="pmf value or moments of a discrete family")
    p.add_argument("--family", required=True, choices=["uniform", "binomial", "poisson", "negbinomial"])
    p.add_argument("--M", dest="m_max", type=int, help="uniform support size")
    p.add_argument("--n", type=int, help="binomial trial count")
    p.add_argument("--p", type=float, help="success probability")
    p.add_argument("--lambda", dest="lam", type=float, help="Poisson rate")
    p.add_argument("--kappa", type=int, help="negative binomial success target")
    p.add_argument("--m", type=int, help="outcome at which to evaluate the pmf")
    p.add_argument("--moments", action="store_true", help="also print mean and variance")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("posterior", help="grid posterior from a JSON problem spec")
    p.add_argument("spec", help="problem-spec JSON file")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(func=cmd_posterior)

    p = sub.add_parser("diagnostic", help="predictive values and Bayes factors of a screening test")
    p.add_argument("--sens", type=float, required=True)
    p.add_argument("--spec", type=float, required=True)
    p.add_argument("--prev", type=float, required=True)
    p.add_argument("--plot", help="write a prior/posterior bar chart (SVG)")
    p.set_defaults(func=cmd_diagnostic)

    p = sub.add_parser("bf", help="classify a Bayes factor")
    p.add_argument("--bf", type=float, required=True)
    p.add_argument("--log-scale", action="store_true", help="use the 2 ln(BF) bands")
    p.set_defaults(func=cmd_bf)

    p = sub.add_parser("mle", help="binomial maximum likelihood estimate")
    p.add_argument("--m", type=int, required=True, help="successes")
    p.add_argument("--n", type=int, required=True, help="trials")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--grid", help="comma-separated theta grid for the uniform-prior MAP comparison")
    p.set_defaults(func=cmd_mle)

    p = sub.add_parser("dag", help="seeded random DAG as DOT")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--n", type=int)
    p.add_argument("--edge-prob", type=float)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="DOT output path (default stdout)")
    p.add_argument("--csv", help="also write a from,to edge list")
    p.set_defaults(func=cmd_dag)

    p = sub.add_parser("converge", help="prior-strength convergence table")
    p.add_argument("--preset", choices=["fig4"])
    p.add_argument("--start", type=float)
    p.add_argument("--end", type=float)
    p.add_argument("--rate", type=float, default=FIG4_RATE)
    p.add_argument("--samples", help="comma-separated increasing sample sizes")
    p.add_argument("--group", default="Group", help="label for a single custom curve")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--plot", help="write stacked panels (SVG)")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("paper-fixtures", help="run the golden reference fixtures")
    p.add_argument("--only", help="run fixtures whose id contains this text")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paper_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: --help exits 0, bad usage exits 2
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InvalidParameterError) as exc:
        print(f"bdt {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateComputationError as exc:
        print(f"bdt {args.command}: degenerate computation: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"bdt {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
