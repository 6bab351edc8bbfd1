#!/usr/bin/env python3
"""
Command-line interface for pyqnk - batch verification of Q_{n,k}(eta | tau).
"""

import argparse
import json
import logging
import sys
from pathlib import Path

EXIT_FAIL = 1
EXIT_CONFIG = 2


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def run_command(args):
    """Run a suite and write its report."""
    from .errors import ConfigError, QnkError
    from .suites import run_suite
    from .suites.config import (
        SuiteConfig, config_from_document, parse_complex, parse_matrices, parse_nk, parse_tolerance,
    )
    from .document import DocumentParser

    _configure_logging(args.verbose)

    try:
        values = {}
        if args.config:
            values.update(config_from_document(DocumentParser().parse_file(args.config)))
        if args.suite:
            values["suite"] = args.suite
        if args.nk is not None:
            values["nk_list"] = tuple(parse_nk(text) for text in args.nk if text.strip())
        if args.tau:
            values["tau_list"] = tuple(parse_complex(text, "tau") for text in args.tau)
        if args.eta:
            values["eta_list"] = tuple(parse_complex(text, "eta") for text in args.eta)
        if args.seed is not None:
            values["seed"] = args.seed
        if args.draws is not None:
            values["draws"] = args.draws
        if args.matrices:
            values["matrices"] = parse_matrices(args.matrices)
        if args.tol_override:
            tolerances = dict(values.get("tolerances", {}))
            tolerances.update(parse_tolerance(text) for text in args.tol_override)
            values["tolerances"] = tolerances
        if args.out:
            values["out"] = args.out
        if args.jobs is not None:
            values["jobs"] = args.jobs
        config = SuiteConfig(**values)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)

    try:
        report = run_suite(config)
    except QnkError as e:
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        sys.exit(EXIT_FAIL)

    text = report.to_text()
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)

    summary = report.summary()
    if not args.quiet:
        print(
            f"{summary['passed']}/{summary['total']} checks passed, {summary['failed']} failed"
            f" ({summary['informational_failed']} informational)",
            file=sys.stderr if not config.out else sys.stdout,
        )
    if not report.all_passed:
        for record in report.failures:
            logging.getLogger("pyqnk.cli").warning(
                "FAIL %s n=%s k=%s value=%s tol=%s", record.check_id, record.n, record.k, record.value, record.tol
            )
        sys.exit(EXIT_FAIL)


def inspect_command(args):
    """Parse a report file and print a JSON summary."""
    from .document import read_report
    from .errors import ConfigError

    for report_file in args.files:
        path = Path(report_file)
        if not path.exists():
            print(f"Error: File not found: {report_file}", file=sys.stderr)
            sys.exit(EXIT_FAIL)
        try:
            report = read_report(str(path))
        except ConfigError as e:
            print(f"Error reading {report_file}: {e}", file=sys.stderr)
            sys.exit(EXIT_CONFIG)

        by_check: dict[str, dict[str, int]] = {}
        for record in report.get_all("record"):
            counts = by_check.setdefault(record.get("check_id"), {"passed": 0, "failed": 0})
            counts["passed" if record.get("pass") else "failed"] += 1
        summary = report.get("summary")
        print(json.dumps({
            "file": report_file,
            "version": report.get("version"),
            "seed": report.get("seed"),
            "summary": summary.to_dict() if summary is not None else None,
            "checks": dict(sorted(by_check.items())),
        }, indent=2))


def main():
    """Main entry point for pyqnk CLI."""
    parser = argparse.ArgumentParser(
        prog="pyqnk",
        description="Verify the identities behind the elliptic algebras Q_{n,k}(eta | tau)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Run command
    run_parser = subparsers.add_parser(
        "run",
        help="Run a verification suite and write a report",
    )
    run_parser.add_argument(
        "--suite",
        choices=["theta", "heisenberg", "qybe", "modular", "algebra", "all"],
        help="Suite to run (default: all)",
    )
    run_parser.add_argument(
        "--nk",
        action="append",
        help="An (n, k) pair as 'n,k'; repeat for several (default: 2,1 3,1 3,2 4,1 5,2)",
    )
    run_parser.add_argument(
        "--tau",
        action="append",
        help="A tau value such as 0.2+1.1j; repeat for several (default: sampled)",
    )
    run_parser.add_argument(
        "--eta",
        action="append",
        help="An eta value; repeat for several (default: sampled generic values)",
    )
    run_parser.add_argument(
        "--seed",
        type=int,
        help="Seed of the PCG64 generator (default: 42)",
    )
    run_parser.add_argument(
        "--draws",
        type=int,
        help="Random draws per (n, k) for the QYBE suite (default: 20)",
    )
    run_parser.add_argument(
        "--tol-override",
        action="append",
        metavar="CHECK=VALUE",
        help="Replace the tolerance of one check id",
    )
    run_parser.add_argument(
        "--matrices",
        help="random:COUNT:BOUND or file:PATH (default: random:5:5)",
    )
    run_parser.add_argument(
        "--config",
        help="Suite configuration document; flags override its values",
    )
    run_parser.add_argument(
        "-o", "--out",
        help="Report file (default: stdout)",
    )
    run_parser.add_argument(
        "-j", "--jobs",
        type=int,
        help="Worker processes (default: 1)",
    )
    run_parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Debug logging",
    )
    run_parser.add_argument(
        "-q", "--quiet",
        action="store_true",
        help="Suppress summary output",
    )
    run_parser.set_defaults(func=run_command)

    # Inspect command
    inspect_parser = subparsers.add_parser(
        "inspect",
        help="Summarize report files as JSON",
    )
    inspect_parser.add_argument(
        "files",
        nargs="+",
        help="Report files",
    )
    inspect_parser.set_defaults(func=inspect_command)

    args = parser.parse_args()

    if args.command is None:
        parser.print_help()
        sys.exit(1)

    args.func(args)


if __name__ == "__main__":
    main()
