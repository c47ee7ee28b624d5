# src/cli.py
import argparse
import json
import logging
import sys

import pandas as pd

from src import interval
from src.catalog import FUNCTIONS, catalog
from src.progress_handler import ProgressHandler
from src.report import RunReport, load_config
from src.rounding import RoundingPolicy
from src.search_engine import EXIT_BUDGET, EXIT_SUCCESS, EXIT_USAGE, solve
from src.solver_config import SolverConfig, get_options
from src.tables import DEFAULT_SCALING_DIMS, SUITES, reproduce_tables, scaling_study

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s: %(name)s: %(message)s"

# Command-line flag for each solver option whose name differs
FLAG_NAMES = {
    "p": "--dims-per-iter",
    "s": "--subintervals",
}

_TYPES = {"int": int, "float": float, "str": str}


class UsageError(ValueError):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _on_off(text):
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected on or off, got {text!r}")
    return text == "on"


def _rounding(text):
    try:
        return RoundingPolicy.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _add_solver_options(parser):
    """One flag per solver option, built from the option table."""
    for name, spec in get_options().items():
        flag = FLAG_NAMES.get(name, "--" + name.replace("_", "-"))
        kwargs = {"dest": name, "default": None, "help": f"{spec['description']} (default: {spec['default']})"}
        if name == "derivative_test":
            kwargs.update(type=_on_off, metavar="on|off")
        elif name == "rounding":
            kwargs.update(type=_rounding)
        elif spec["type"] == "bool":
            kwargs.update(action="store_true")
        else:
            kwargs["type"] = _TYPES[spec["type"]]
        if "choices" in spec:
            kwargs["choices"] = spec["choices"]
        parser.add_argument(flag, **kwargs)


def build_parser():
    parser = ArgumentParser(prog="main.py", description="Rigorous interval branch-and-bound global minimizer")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging level (default: WARNING)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    run = commands.add_parser("run", help="Minimize one benchmark and write a report")
    _add_solver_options(run)
    run.add_argument("--output", help="Report path (stdout when omitted)")
    run.add_argument("--format", default="json", choices=["json", "csv"], help="Report format")
    run.add_argument("--replay", metavar="REPORT", help="Re-run with the configuration echoed by a JSON report")

    tables = commands.add_parser("tables", help="Reproduce the benchmark iteration and region counts")
    tables.add_argument("--suite", default="n50", choices=list(SUITES))
    tables.add_argument("--functions", nargs="+", choices=list(FUNCTIONS), help="Subset of benchmarks")
    tables.add_argument("--threads", type=int, default=1)
    tables.add_argument("--debug-soundness", action="store_true")
    tables.add_argument("--output", help="Write the comparison table as CSV")

    scaling = commands.add_parser("scaling", help="Iterations against dimension for one benchmark")
    scaling.add_argument("--function", default="levy", choices=list(FUNCTIONS))
    scaling.add_argument("--dims", type=int, nargs="+", default=list(DEFAULT_SCALING_DIMS))
    scaling.add_argument("--dims-per-iter", dest="p", type=int, default=10)
    scaling.add_argument("--threads", type=int, default=1)
    scaling.add_argument("--output", help="Write the table as CSV")

    listing = commands.add_parser("catalog", help="List the benchmark functions")
    listing.add_argument("--n", type=int, default=2)

    refine = commands.add_parser("refine", help="Show how subdivision tightens a naive enclosure")
    refine.add_argument("--pieces", type=int, nargs="+", default=[1, 10, 100, 1000])
    return parser


def configure_logging(args):
    level = args.log_level or {0: "WARNING", 1: "INFO"}.get(args.verbose, "DEBUG")
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr)


def config_from_args(args) -> SolverConfig:
    if args.replay:
        base = load_config(args.replay).to_dict()
    else:
        base = {}
    overrides = {name: getattr(args, name) for name in get_options() if getattr(args, name) is not None}
    base.update(overrides)
    return SolverConfig.from_dict(base).validate()


def run_command(args) -> int:
    config = config_from_args(args)
    result = solve(config, ProgressHandler(f"{config.function} n={config.n}"))
    report = RunReport.from_result(result)
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    if args.output:
        report.write(args.output, args.format)
        logger.info("Report written to %s", args.output)
    else:
        sys.stdout.write(text)
    if result.soundness == "violated":
        logger.error("Soundness check failed; see the log above")
    return result.exit_code


def _emit_table(frame: pd.DataFrame, output):
    print(frame.to_string(index=False))
    if output:
        frame.to_csv(output, index=False)
        logger.info("Table written to %s", output)
    return EXIT_SUCCESS if frame["passed"].all() else EXIT_BUDGET


def tables_command(args) -> int:
    frame = reproduce_tables(args.suite, args.functions, args.threads, args.debug_soundness, ProgressHandler("tables"))
    return _emit_table(frame, args.output)


def scaling_command(args) -> int:
    frame = scaling_study(args.dims, args.function, args.p, args.threads, ProgressHandler("scaling"))
    return _emit_table(frame, args.output)


def catalog_command(args) -> int:
    rows = [
        {
            "function": obj.name,
            "lower": obj.lower,
            "upper": obj.upper,
            "minimizer": obj.known_minimizer[0],
            "minimum": obj.known_minimum,
        }
        for obj in catalog(args.n)
    ]
    print(f"n = {args.n}")
    print(pd.DataFrame(rows).to_string(index=False))
    return EXIT_SUCCESS


def refine_rows(pieces_list):
    """x - x^2 on [0, 1]: naive, single-occurrence and subdivided enclosures."""
    x = interval.Interval(0.0, 1.0)
    naive = x - x * x
    rewritten = 0.25 - interval.sqr(x - 0.5)
    rows = [
        {"form": "x - x*x", "pieces": 1, "lo": float(naive.lo), "hi": float(naive.hi)},
        {"form": "0.25 - (x - 0.5)^2", "pieces": 1, "lo": float(rewritten.lo), "hi": float(rewritten.hi)},
    ]
    for pieces in pieces_list:
        union = interval.refine_union(lambda piece: piece - piece * piece, x, pieces)
        rows.append({"form": "x - x*x", "pieces": pieces, "lo": float(union.lo), "hi": float(union.hi)})
    return rows


def refine_command(args) -> int:
    if any(pieces < 1 for pieces in args.pieces):
        raise UsageError("--pieces values must be positive")
    print(pd.DataFrame(refine_rows(args.pieces)).to_string(index=False))
    return EXIT_SUCCESS


COMMANDS = {
    "run": run_command,
    "tables": tables_command,
    "scaling": scaling_command,
    "catalog": catalog_command,
    "refine": refine_command,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def start_cli():
    sys.exit(main())


if __name__ == "__main__":
    start_cli()
