import argparse
import logging
import math
import sys

from pathlib import Path

from . import __version__
from . import gennormal, ode, oracle, series, stirling
from .config import load_config
from .errors import DomainError, PowexpError
from .figures import figure_rows
from .records import (
    OutputRecord,
    dump_csv,
    parse_float_list,
    parse_int_list,
    parse_moment_list,
    read_data,
)


def _eval_diagnostics(result):
    return {
        "terms_used": result.terms_used,
        "last_term_magnitude": result.last_term_magnitude,
        "cancellation_index": result.cancellation_index,
        "converged": result.converged,
    }


def _integrate(args, config, policy):
    sign = series.Sign(args.sign)
    result = series.definite_integral(args.a, args.b, args.n, sign, policy)
    record = OutputRecord(
        "integrate",
        {"n": args.n, "sign": args.sign, "from": args.a, "to": args.b},
        {"value": result.value},
        _eval_diagnostics(result),
    )

    if args.oracle:
        if not (math.isfinite(args.a) and math.isfinite(args.b)):
            raise DomainError("--oracle needs finite limits")
        unit = sign.unit
        check = oracle.integrate(
            lambda t: math.exp(unit * t ** args.n),
            args.a,
            args.b,
            config["quad_tol"],
            config["quad_max_depth"],
        )
        record.diagnostics["oracle_value"] = check.value
        record.diagnostics["est_error"] = check.est_error

    return record, result.converged


def _antideriv(args, config, policy):
    query = series.SeriesQuery(args.x, args.n, series.Sign(args.sign))
    if args.method == "maclaurin":
        result = series.maclaurin_antiderivative(query, policy)
    else:
        result = series.antiderivative(query, policy)

    record = OutputRecord(
        "antideriv",
        {"n": args.n, "sign": args.sign, "x": args.x, "method": args.method},
        {"value": result.value},
        _eval_diagnostics(result),
    )
    return record, result.converged


def _distribution(args):
    return gennormal.GenNormal(args.m, args.sigma, args.n)


def _pdf(args, config, policy):
    d = _distribution(args)
    record = OutputRecord(
        "pdf",
        {"n": args.n, "m": args.m, "sigma": args.sigma, "x": args.x},
        {"density": gennormal.pdf(d, args.x)},
    )
    return record, True


def _cdf(args, config, policy):
    d = _distribution(args)
    result = gennormal.cdf(d, args.x, policy)
    record = OutputRecord(
        "cdf",
        {"n": args.n, "m": args.m, "sigma": args.sigma, "x": args.x},
        {"probability": result.value},
        _eval_diagnostics(result),
    )
    return record, result.converged


def _moments(args, config, policy):
    d = gennormal.GenNormal(0.0, args.sigma, args.n)
    moment = gennormal.central_moment(d, args.order, args.method)
    record = OutputRecord(
        "moments",
        {"n": args.n, "sigma": args.sigma, "order": args.order, "method": args.method},
        {"moment": moment.value},
    )
    return record, True


def _shape(args, config, policy):
    if args.data is not None:
        moments = gennormal.empirical_central_moments(read_data(args.data), 2 * args.n)
        source = {"data": str(args.data)}
    else:
        moments = args.moments
        source = {"moments": {"m{}".format(m.order): m.value for m in moments}}

    stats = gennormal.generalized_shape(moments, args.n)
    record = OutputRecord(
        "shape",
        dict(n=args.n, **source),
        {
            "skew": stats.skew_coeff,
            "skew_sign": stats.skew_sign,
            "kurtosis": stats.kurtosis,
            "kurtosis_excess": stats.kurtosis_excess,
        },
    )
    return record, True


def _mvpdf(args, config, policy):
    components = [gennormal.GenNormal(0.0, 1.0, n) for n in args.orders]
    mv = gennormal.MultivariateGenNormal(components)
    record = OutputRecord(
        "mvpdf",
        {"orders": args.orders, "z": args.z},
        {"density": gennormal.multivariate_pdf(mv, args.z)},
    )
    return record, True


def _ode_check(args, config, policy):
    points = args.points if args.points is not None else config["grid_points"]
    grid = ode.default_grid(args.a, args.b, points)
    equation = ode.Equation(args.eq)

    audit = None
    if args.series == "auto":
        audit = ode.pairing_audit(args.n, grid, policy, config["audit_tol"])
        solvers = [s for s, e in audit.pairing.items() if e is equation]
        if not solvers:
            raise DomainError("neither f nor g solves equation {} at n={}".format(args.eq, args.n))
        particular = solvers[0]
    else:
        particular = ode.Particular(args.series)

    spec = ode.SolutionSpec(args.k1, args.k2, particular, policy)
    report = ode.residual(ode.OdeProblem(args.n, equation), spec, grid, parallel=True)

    record = OutputRecord(
        "ode-check",
        {
            "n": args.n,
            "eq": args.eq,
            "series": args.series,
            "k1": args.k1,
            "k2": args.k2,
            "from": args.a,
            "to": args.b,
            "points": points,
        },
        {"particular": particular.value, "max_abs_residual": report.max_abs_residual},
        {"converged": report.converged},
    )
    if audit is not None:
        record.diagnostics["matches_stated_pairing"] = audit.matches_stated
    return record, report.converged


def _stirling(args, config, policy):
    report = stirling.stirling_report(args.n)
    raw, corrected = stirling.wallis_partial(args.n)
    outputs = report._asdict()
    del outputs["n"]
    outputs["wallis_raw"] = raw
    outputs["wallis_corrected"] = corrected
    return OutputRecord("stirling", {"n": args.n}, outputs), True


def _figures(args, config, policy):
    n = args.n if args.n is not None else config["figure_n"]
    table = figure_rows(args.which, n)
    if args.format == "json":
        record = OutputRecord(
            "figures",
            {"which": args.which, "n": n},
            {"columns": list(table.columns), "rows": [list(row) for row in table.rows]},
        )
        return record, True
    return dump_csv(table.columns, table.rows), True


# A bare -inf after these reads as an unknown option, so it is joined as --from=-inf
ENDPOINT_FLAGS = ("--from", "--to")


def _join_endpoint_literals(argv):
    joined = []
    tokens = iter(argv)
    for token in tokens:
        if token in ENDPOINT_FLAGS:
            value = next(tokens, None)
            if value is None:
                joined.append(token)
            elif value.lower() in ("-inf", "-infinity"):
                joined.append("{}={}".format(token, value))
            else:
                joined.extend((token, value))
        else:
            joined.append(token)
    return joined


def _output_format(args, config):
    if args.format is not None:
        return args.format
    if args.out is not None and args.out.suffix.lower() in (".csv", ".json"):
        return args.out.suffix.lower()[1:]
    return config["format"]


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="truncation tolerance (default 1e-10)")
    common.add_argument("--max-terms", type=int, help="series term cap (default 200)")
    common.add_argument("--format", choices=["json", "csv"], help="output format")
    common.add_argument("--out", type=Path, help="write output to this file")
    return common


def _distribution_args(parser):
    parser.add_argument("--n", type=int, required=True, help="even order of the density")
    parser.add_argument("--m", type=float, default=0.0, help="location")
    parser.add_argument("--sigma", type=float, default=1.0, help="scale")
    parser.add_argument("--x", type=float, required=True)


def build_parser():
    parser = argparse.ArgumentParser(prog="powexp")
    parser.add_argument(
        "-f",
        "--config",
        metavar="config",
        type=Path,
        help="powexp config file",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="display verbose logging information",
    )
    parser.add_argument(
        "--version",
        action="store_true",
        help="display version information",
    )

    common = _common_parser()
    subparsers = parser.add_subparsers()

    integrate_parser = subparsers.add_parser("integrate", parents=[common])
    integrate_parser.add_argument("--n", type=int, required=True)
    integrate_parser.add_argument("--sign", choices=["pos", "neg"], default="neg")
    integrate_parser.add_argument("--from", dest="a", type=float, required=True)
    integrate_parser.add_argument("--to", dest="b", type=float, required=True)
    integrate_parser.add_argument(
        "--oracle",
        action="store_true",
        help="also integrate by adaptive quadrature",
    )
    integrate_parser.set_defaults(func=_integrate)

    antideriv_parser = subparsers.add_parser("antideriv", parents=[common])
    antideriv_parser.add_argument("--n", type=int, required=True)
    antideriv_parser.add_argument("--sign", choices=["pos", "neg"], default="neg")
    antideriv_parser.add_argument("--x", type=float, required=True)
    antideriv_parser.add_argument(
        "--method", choices=["bracket", "maclaurin"], default="bracket"
    )
    antideriv_parser.set_defaults(func=_antideriv)

    pdf_parser = subparsers.add_parser("pdf", parents=[common])
    _distribution_args(pdf_parser)
    pdf_parser.set_defaults(func=_pdf)

    cdf_parser = subparsers.add_parser("cdf", parents=[common])
    _distribution_args(cdf_parser)
    cdf_parser.set_defaults(func=_cdf)

    moments_parser = subparsers.add_parser("moments", parents=[common])
    moments_parser.add_argument("--n", type=int, required=True)
    moments_parser.add_argument("--sigma", type=float, default=1.0)
    moments_parser.add_argument("--order", type=int, required=True)
    moments_parser.add_argument(
        "--method", choices=["gamma", "recurrence", "kn"], default="gamma"
    )
    moments_parser.set_defaults(func=_moments)

    shape_parser = subparsers.add_parser("shape", parents=[common])
    shape_parser.add_argument("--n", type=int, required=True, help="reference order")
    source = shape_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", type=Path, help="file of samples")
    source.add_argument(
        "--moments",
        type=parse_moment_list,
        help="central moments such as m4=1,m5=0,m8=5",
    )
    shape_parser.set_defaults(func=_shape)

    mvpdf_parser = subparsers.add_parser("mvpdf", parents=[common])
    mvpdf_parser.add_argument("--orders", type=parse_int_list, required=True)
    mvpdf_parser.add_argument("--z", type=parse_float_list, required=True)
    mvpdf_parser.set_defaults(func=_mvpdf)

    ode_parser = subparsers.add_parser("ode-check", parents=[common])
    ode_parser.add_argument("--n", type=int, required=True)
    ode_parser.add_argument("--eq", choices=["13", "14"], required=True)
    ode_parser.add_argument("--series", choices=["f", "g", "zero", "auto"], default="auto")
    ode_parser.add_argument("--k1", type=float, default=0.0)
    ode_parser.add_argument("--k2", type=float, default=0.0)
    ode_parser.add_argument("--from", dest="a", type=float, default=0.1)
    ode_parser.add_argument("--to", dest="b", type=float, default=1.2)
    ode_parser.add_argument("--points", type=int)
    ode_parser.set_defaults(func=_ode_check)

    stirling_parser = subparsers.add_parser("stirling", parents=[common])
    stirling_parser.add_argument("--n", type=int, required=True)
    stirling_parser.set_defaults(func=_stirling)

    figures_parser = subparsers.add_parser("figures", parents=[common])
    figures_parser.add_argument("--which", type=int, choices=[1, 2, 3], required=True)
    figures_parser.add_argument("--n", type=int, help="order used by figure 2")
    figures_parser.set_defaults(func=_figures)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(_join_endpoint_literals(sys.argv[1:] if argv is None else argv))
    except SystemExit as ex:
        return ex.code

    if args.verbose:
        logging.basicConfig(level=logging.INFO)

    if args.version:
        print("powexp {} from {}".format(__version__, __file__))
        return 0

    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        return 2

    try:
        config = load_config(args.config)
    except IOError as ex:
        logging.error("config-error: could not open config file: %s", ex)
        return 2
    except (KeyError, ValueError) as ex:
        logging.error("config-error: %s", ex)
        return 2

    # Flags override the config file
    for key, flag in (("tol", args.tol), ("max_terms", args.max_terms)):
        if flag is not None:
            config[key] = flag
    args.format = _output_format(args, config)

    try:
        policy = series.TruncationPolicy(config["max_terms"], config["tol"], config["tol"])
        logging.info("running %s with %s", args.func.__name__.lstrip("_"), policy)
        output, converged = args.func(args, config, policy)
    except PowexpError as ex:
        logging.error("%s: %s", ex.kind, ex)
        return 3

    text = output if isinstance(output, str) else output.dump(args.format)
    if args.out is not None:
        with open(args.out, "w", newline="") as out:
            out.write(text)
        logging.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)

    if not converged:
        logging.error("not-converged: %s stopped at the term cap", output.command)
        return 4
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
