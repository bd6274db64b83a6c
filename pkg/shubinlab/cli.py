"""Command-line front end: `shubinlab <command> [options]`

Exit codes: 0 success, 1 failed contract, 2 usage or configuration error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from shubinlab import config as env_config
from shubinlab import constants, tables, utils
from shubinlab.bornjordan import op_bj
from shubinlab.exceptions import ShubinLabConfigError, ShubinLabError
from shubinlab.gridfield import (
    Grid1D,
    SampledFunction,
    chirp,
    gaussian,
    hermite_function,
    two_gaussian,
)
from shubinlab.intertwine import build_R
from shubinlab.models import RunConfig
from shubinlab.ordering import ordering_table
from shubinlab.shubin import (
    marginal_residuals,
    op_tau_kernel,
    rihaczek_form,
    wigner_tau,
)
from shubinlab.suites import SUITE_NAMES, covariance_scan, run_suite
from shubinlab.symbols import NAMED_SYMBOLS, named_symbol
from shubinlab.sympcore import generator, random_rotation_sp0

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SIGNALS: Dict[str, Callable[[Grid1D, Optional[float]], SampledFunction]] = {
    "gaussian": lambda grid, param: gaussian(
        grid, width=1.0 if param is None else param
    ),
    "hermite": lambda grid, param: hermite_function(
        grid, 0 if param is None else int(param)
    ),
    "chirp": lambda grid, param: chirp(grid, 1.0 if param is None else param),
    "two-gaussian": lambda grid, param: two_gaussian(
        grid, separation=3.0 if param is None else param
    ),
}

MATRICES: Dict[str, Callable[[np.random.Generator], np.ndarray]] = {
    "J": lambda rng: generator("J"),
    "-J": lambda rng: -generator("J"),
    "-I": lambda rng: -np.identity(2),
    "M2": lambda rng: generator("M", param=2.0),
    "random": random_rotation_sp0,
}


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, help="flat key = value settings file")
    parser.add_argument("-N", type=int, dest="N", help="grid size, a power of two")
    parser.add_argument("-L", type=float, dest="L", help="window length")
    parser.add_argument(
        "--tau", type=float, nargs="+", dest="tau_list", help="tau values"
    )
    parser.add_argument("--seed", type=int, help="seed for random Sp0 samples")
    parser.add_argument("--output-dir", dest="output_dir", help="artifact directory")
    parser.add_argument("--format", choices=constants.FORMATS, help="table format")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="shubinlab", description="tau-quantization and Born-Jordan laboratory"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    wigner = commands.add_parser("wigner", parents=[common], help="tau-Wigner tables")
    wigner.add_argument("--signal", choices=sorted(SIGNALS), required=True)
    wigner.add_argument(
        "--param", type=float, help="width, Hermite index, chirp rate or separation"
    )
    wigner.set_defaults(handler=cmd_wigner)

    quantize = commands.add_parser(
        "quantize", parents=[common], help="operator kernels"
    )
    target = quantize.add_mutually_exclusive_group(required=True)
    target.add_argument("--symbol", choices=sorted(NAMED_SYMBOLS))
    target.add_argument("--intertwiner", choices=sorted(MATRICES))
    quantize.add_argument(
        "--born-jordan", action="store_true", help="Op_BJ instead of Op_tau"
    )
    quantize.set_defaults(handler=cmd_quantize)

    verify = commands.add_parser(
        "verify", parents=[common], help="run a verification suite"
    )
    verify.add_argument("--suite", choices=SUITE_NAMES, required=True)
    verify.set_defaults(handler=cmd_verify)

    scan = commands.add_parser(
        "covariance-scan", parents=[common], help="covariance residual per generator"
    )
    scan.set_defaults(handler=cmd_covariance_scan)

    ordering = commands.add_parser(
        "ordering-table", parents=[common], help="exact monomial orderings"
    )
    ordering.add_argument("--max-degree", type=int, default=3)
    ordering.set_defaults(handler=cmd_ordering_table)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    overrides = {
        key: getattr(args, key)
        for key in ("N", "L", "tau_list", "seed", "output_dir", "format")
    }
    if args.config is not None:
        return RunConfig.from_file(args.config, overrides)
    return RunConfig.from_mapping(overrides)


def _tau_tag(tau: float) -> str:
    return f"tau{tau:g}"


def cmd_wigner(config: RunConfig, args: argparse.Namespace) -> int:
    grid = config.grid
    f = SIGNALS[args.signal](grid, args.param)
    output = Path(config.output_dir)
    summary: Dict[str, Any] = {"signal": args.signal, "param": args.param, "tables": []}
    for tau in config.tau_list:
        table = wigner_tau(f, f, tau)
        position, momentum = marginal_residuals(table, f)
        entry: Dict[str, Any] = {
            "tau": tau,
            "position_marginal": position,
            "momentum_marginal": momentum,
            "max_imag": utils.max_abs(table.imag),
            "peak": utils.max_abs(table),
        }
        if tau == 1.0:
            entry["rihaczek_residual"] = utils.relative_frobenius(
                table, rihaczek_form(f, f)
            )
        if args.signal == "two-gaussian":
            # cross term sits between the bumps, on the x = 0 row
            cross = utils.max_abs(table[grid.N // 2])
            entry["cross_term_ratio"] = cross / entry["peak"]
        path = output / f"wigner_{args.signal}_{_tau_tag(tau)}.csv"
        tables.write_csv(tables.phase_frame(table, grid), path)
        entry["path"] = str(path)
        summary["tables"].append(entry)
    tables.write_json(summary, output / f"wigner_{args.signal}.json")
    return EXIT_OK


def cmd_quantize(config: RunConfig, args: argparse.Namespace) -> int:
    grid = config.grid
    output = Path(config.output_dir)
    if args.intertwiner is not None:
        S = MATRICES[args.intertwiner](np.random.default_rng(config.seed))
        for tau in config.tau_list:
            path = output / f"R_{args.intertwiner}_{_tau_tag(tau)}.csv"
            tables.write_csv(build_R(S, tau, grid).to_frame(), path)
        return EXIT_OK

    a = named_symbol(args.symbol)
    if args.born_jordan:
        path = output / f"op_bj_{args.symbol}.csv"
        tables.write_csv(op_bj(a, grid).to_frame(), path)
        return EXIT_OK
    for tau in config.tau_list:
        path = output / f"op_{args.symbol}_{_tau_tag(tau)}.csv"
        tables.write_csv(op_tau_kernel(a, tau, grid).to_frame(), path)
    return EXIT_OK


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    report = run_suite(args.suite, config)
    path = tables.write_json(
        report.dump(), Path(config.output_dir) / f"report_{args.suite}.json"
    )
    for check in report.failures:
        logger.error(
            "FAILED %s: residual %s, tolerance %s",
            check.name,
            check.residual,
            check.tolerance,
        )
    logger.info("Report written to %s, pass=%s", path, report.passed)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_covariance_scan(config: RunConfig, args: argparse.Namespace) -> int:
    rows = covariance_scan(config)
    tables.write_rows(rows, Path(config.output_dir) / "covariance_scan", config.format)
    return EXIT_OK


def cmd_ordering_table(config: RunConfig, args: argparse.Namespace) -> int:
    rows = ordering_table(args.max_degree)
    tables.write_rows(rows, Path(config.output_dir) / "ordering_table", config.format)
    return EXIT_OK


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose or env_config.DEBUG else logging.INFO
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = resolve_config(args)
        logger.debug("Resolved %r", config)
        return args.handler(config, args)
    except ShubinLabConfigError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except ShubinLabError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
