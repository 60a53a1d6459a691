"""
Command-line driver.

    unipade pade --fn exp --p 1 --q 1
    unipade pade --fn geometric --table 4 3
    unipade universal build -c cfg.json --steps 6 --report
    unipade universal verify -c cfg.json --target poly:1 --s 10
    unipade universal schedule --systems 3 --steps 5
    unipade metrics --a 1 --b inf

Exit codes: 0 success, 1 failed check or unexpected error, 2 NotInD or verdict
exhaustion, 3 configuration or I/O error, 4 fit budget exhausted.
"""
import argparse
import logging
import os
import sys

import orjson

from . import __version__
from .config import load_config, parse_complex, parse_rational, parse_target
from .core import (
    INFINITY,
    PadeEngine,
    PadeIndex,
    chordal,
    exp_series,
    geometric_series,
    rho_c,
    rho_d,
)
from .core.exceptions import ConfigError, UnipadeError
from .core.precision import get_context, to_mpc
from .core.series import PowerSeries
from .default import Engine as DefaultEngine
from .default import Logger as DefaultLogger
from .default import Orchestrator as DefaultOrchestrator
from .main import ExperimentBuilder
from .universal import schedule_systems
from .utils import (
    COEFFICIENT_COLUMNS,
    MARGIN_COLUMNS,
    NORMALITY_COLUMNS,
    SUP_COLUMNS,
    TRANSCRIPT_COLUMNS,
    artifact_path,
    coefficient_rows,
    invariant_checks_to_list,
    margin_rows,
    normality_rows,
    pade_result_to_dict,
    series_from_dict,
    span_to_dict,
    sup_rows,
    transcript_rows,
    transcript_to_dict,
    verdict_sups,
    verdict_to_dict,
    witness_to_dict,
    write_csv,
    write_json,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_EXHAUSTED = 2

NAMED_SERIES = {"exp": exp_series, "geometric": geometric_series}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 3)."""

    def error(self, message):
        raise ConfigError(message)


def _add_common(parser):
    parser.add_argument("--out", help="Output directory (overrides the configuration).")
    parser.add_argument("--prefix", default=None, help="Artifact file prefix.")
    parser.add_argument("--report", action="store_true", help="Also render a Markdown report.")
    parser.add_argument("--workers", type=int, default=0, help="Worker threads for batch operations.")
    parser.add_argument("--log-file", default=None)
    parser.add_argument("-v", "--verbose", action="store_true")


def _add_config(parser):
    _add_common(parser)
    parser.add_argument("-c", "--config", required=True, help="Experiment configuration (JSON).")
    parser.add_argument("--steps", type=int, default=None)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="unipade", description="Padé approximants and universal series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    pade = commands.add_parser("pade", help="Padé approximants and normality tables.")
    _add_common(pade)
    source = pade.add_mutually_exclusive_group(required=True)
    source.add_argument("--fn", help="exp, geometric or a 'rational:n;d' literal.")
    source.add_argument("--coeffs", help="JSON file with a coefficient list.")
    source.add_argument("--inline", help="'poly:c0,c1,...' coefficients given inline.")
    pade.add_argument("--p", type=int, default=None)
    pade.add_argument("--q", type=int, default=None)
    pade.add_argument("--table", type=int, nargs=2, metavar=("P", "Q"), default=None)
    pade.add_argument("--order", type=int, default=None, help="Truncation order of the series.")
    pade.add_argument("--center", default="0")
    pade.add_argument("--precision", type=int, default=53)
    pade.add_argument("--jacobi", action="store_true", help="Cross-check against the determinant formula.")

    universal = commands.add_parser("universal", help="Universal series constructions.")
    actions = universal.add_subparsers(dest="action", required=True)

    _add_config(actions.add_parser("build", help="Build a universal series."))

    verify = actions.add_parser("verify", help="Search the table for a universality verdict.")
    _add_config(verify)
    verify.add_argument("--target", required=True, help="'poly:...' or 'rational:...;...' literal.")
    verify.add_argument("--s", type=int, required=True)
    verify.add_argument("--compact", type=int, default=0, help="Index into the enumerated compacts.")
    verify.add_argument("--series", default=None, help="Transcript JSON to verify instead of rebuilding.")
    verify.add_argument("--check-level", type=int, default=None)

    _add_config(actions.add_parser("witness", help="Generate the configured density witness."))
    _add_config(actions.add_parser("span", help="Build the configured span member."))

    schedule = actions.add_parser("schedule", help="Print the system schedule.")
    count = schedule.add_mutually_exclusive_group(required=True)
    count.add_argument("--systems", type=int)
    count.add_argument("--countable", action="store_true")
    schedule.add_argument("--steps", type=int, default=1)

    metrics = commands.add_parser("metrics", help="Chordal distance or coefficient metrics.")
    metrics.add_argument("--a", required=True)
    metrics.add_argument("--b", required=True)
    metrics.add_argument("--kind", choices=("chordal", "rho"), default="chordal")
    metrics.add_argument("--precision", type=int, default=53)
    return parser


def _logger(args):
    level = logging.DEBUG if args.verbose else logging.INFO
    return DefaultLogger(log_file=args.log_file, log_level=level)


def _output_directory(args) -> str:
    return args.out or os.environ.get("UNIPADE_OUTPUT_DIR") or "."


def _read_json(path: str):
    try:
        with open(path, "rb") as handle:
            return orjson.loads(handle.read())
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}")
    except orjson.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e}")


def load_coefficients(path: str, center, precision: int) -> PowerSeries:
    """A JSON list of coefficients, or a series document {"center": ..., "coeffs": [...]}."""
    document = _read_json(path)
    if isinstance(document, dict):
        center = parse_complex(document.get("center", center))
        document = document.get("coeffs")
    if not isinstance(document, list) or not document:
        raise ConfigError(f"{path} must hold a non-empty coefficient list.")
    ctx = get_context(precision)
    try:
        coefficients = tuple(to_mpc(ctx, c) for c in document)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid coefficient in {path}: {e}")
    return PowerSeries(coefficients, center, precision)


def _pade_series(args, order: int) -> PowerSeries:
    center = parse_complex(args.center)
    if args.coeffs:
        return load_coefficients(args.coeffs, center, args.precision)
    if args.inline:
        return parse_target(args.inline, center, args.precision).taylor(center, order)
    if args.fn in NAMED_SERIES:
        return NAMED_SERIES[args.fn](order, center, args.precision)
    if args.fn.startswith("rational:"):
        return parse_rational(args.fn, center, args.precision).taylor(center, order)
    raise ConfigError(f"Unknown series {args.fn!r}; use exp, geometric or a rational literal.")


def cmd_pade(args) -> int:
    if args.table is None and (args.p is None or args.q is None):
        raise ConfigError("Give --p and --q, or --table P Q.")
    if any(value is not None and value < 0 for value in (args.p, args.q, *(args.table or ()))):
        raise ConfigError("Indices must be nonnegative.")
    if args.precision < 53:
        raise ConfigError("Precision must be at least 53 bits.")
    needed = max(
        (args.p + args.q) if args.p is not None and args.q is not None else 0,
        sum(args.table) if args.table else 0,
    )
    order = args.order if args.order is not None else needed + 1
    if order < needed:
        raise ConfigError(f"--order {order} is below p + q = {needed}.")

    logger = _logger(args)
    orchestrator = None
    if args.workers > 0:
        orchestrator = DefaultOrchestrator(args.workers)
        orchestrator.set_logger(logger)
    engine = PadeEngine(args.precision, orchestrator=orchestrator, logger=logger)
    series = _pade_series(args, order)
    directory, prefix = _output_directory(args), args.prefix or "unipade"
    try:
        if args.table:
            entries = engine.normality_table(series, *args.table)
            path = write_csv(artifact_path(directory, prefix, "ctable.csv"), NORMALITY_COLUMNS, normality_rows(entries))
            logger.info(f"Wrote {path}")
        if args.p is not None and args.q is not None:
            index = PadeIndex(args.p, args.q)
            document = pade_result_to_dict(engine.compute_pade(series, index))
            if args.jacobi:
                report = engine.jacobi_cross_check(series, index)
                document["jacobi"] = {
                    "passed": report.passed,
                    "deviation": float(report.deviation),
                    "relative_deviation": float(report.relative_deviation),
                }
            path = write_json(artifact_path(directory, prefix, f"pade_{args.p}_{args.q}.json"), document)
            logger.info(f"Wrote {path}")
    finally:
        if orchestrator:
            orchestrator.shutdown()
    return EXIT_OK


def _experiment(args):
    config = load_config(args.config)
    logger = _logger(args)
    builder = ExperimentBuilder().with_config(config).with_logger(logger)
    try:
        if args.out:
            builder.with_output_dir(args.out)
        if args.prefix:
            builder.with_prefix(args.prefix)
    except ValueError as e:
        raise ConfigError(str(e))
    if args.workers > 0:
        builder.with_orchestrator(DefaultOrchestrator(args.workers))
    if args.report:
        builder.with_engine(DefaultEngine())
    return builder.build()


def _build(experiment, args) -> int:
    series, transcript, checks = experiment.build(args.steps)
    document = transcript_to_dict(transcript)
    check_list = invariant_checks_to_list(checks)
    experiment.emit("transcript", document, "build.md.j2", extra={"checks": check_list})
    experiment.emit("invariants", check_list)
    write_csv(experiment.output_path("transcript.csv"), TRANSCRIPT_COLUMNS, transcript_rows(transcript))
    write_csv(experiment.output_path("coefficients.csv"), COEFFICIENT_COLUMNS, coefficient_rows(series))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAILED


def _verify(experiment, args) -> int:
    config = experiment.config
    if args.s < 1:
        raise ConfigError("--s must be a positive integer.")
    if args.series:
        try:
            series = series_from_dict(_read_json(args.series))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"{args.series} is not a transcript or span document: {e}")
    else:
        series, _, _ = experiment.build(args.steps)
    compacts = config.enumeration.compacts
    if not 0 <= args.compact < len(compacts):
        raise ConfigError(f"--compact must index one of the {len(compacts)} enumerated compacts.")
    target = parse_target(args.target, series.center, series.precision)
    verdict = experiment.verify(series, target, args.s, compacts[args.compact], check_level=args.check_level)
    experiment.emit("verdict", verdict_to_dict(verdict), "verify.md.j2")
    write_csv(experiment.output_path("margins.csv"), MARGIN_COLUMNS, margin_rows(verdict))
    write_csv(experiment.output_path("sup.csv"), SUP_COLUMNS, sup_rows(verdict_sups(verdict)))
    return EXIT_OK if verdict.found else EXIT_EXHAUSTED


def _witness(experiment, args) -> int:
    report = experiment.witness()
    experiment.emit("witness", witness_to_dict(report), "witness.md.j2")
    write_csv(experiment.output_path("sup.csv"), SUP_COLUMNS, sup_rows(report.sups.items()))
    return EXIT_OK if report.passed else EXIT_FAILED


def _span(experiment, args) -> int:
    series, report = experiment.span(args.steps)
    experiment.emit("span", span_to_dict(series, report), "span.md.j2")
    write_csv(experiment.output_path("span_coefficients.csv"), COEFFICIENT_COLUMNS, coefficient_rows(series))
    return EXIT_OK if report.passed else EXIT_FAILED


UNIVERSAL_ACTIONS = {"build": _build, "verify": _verify, "witness": _witness, "span": _span}


def cmd_schedule(args) -> int:
    try:
        plan = schedule_systems(None if args.countable else args.systems, args.steps)
    except ValueError as e:
        raise ConfigError(str(e))
    document = [list(step) for step in plan] if args.countable else [step[0] for step in plan]
    sys.stdout.write(orjson.dumps(document).decode() + "\n")
    return EXIT_OK


def cmd_universal(args) -> int:
    if args.action == "schedule":
        return cmd_schedule(args)
    if args.steps is not None and args.steps < 1:
        raise ConfigError("--steps must be at least 1.")
    experiment = _experiment(args)
    try:
        return UNIVERSAL_ACTIONS[args.action](experiment, args)
    finally:
        experiment.shutdown()


def _metric_point(text: str):
    return INFINITY if text.strip().lower() in ("inf", "infinity") else parse_complex(text)


def _metric_list(text: str) -> tuple:
    return tuple(parse_complex(part.strip()) for part in text.split(",") if part.strip())


def cmd_metrics(args) -> int:
    if args.precision < 53:
        raise ConfigError("Precision must be at least 53 bits.")
    if args.kind == "chordal":
        document = {"chordal": float(chordal(_metric_point(args.a), _metric_point(args.b), args.precision))}
    else:
        a, b = _metric_list(args.a), _metric_list(args.b)
        c, d = rho_c(a, b, args.precision), rho_d(a, b, args.precision)
        document = {
            "rho_c": float(c.value),
            "rho_c_tail_bound": float(c.tail_bound),
            "rho_d": float(d.value),
            "length": c.length,
        }
    sys.stdout.write(orjson.dumps(document, option=orjson.OPT_SORT_KEYS).decode() + "\n")
    return EXIT_OK


COMMANDS = {"pade": cmd_pade, "universal": cmd_universal, "metrics": cmd_metrics}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UnipadeError as e:
        sys.stderr.write(f"{e}\n")
        return e.exit_code
    except Exception as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
