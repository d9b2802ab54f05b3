"""Command-line surface: norm, verify, decompose and fuzz.

Exit codes: 0 when every check passes, 1 when a mathematical law fails,
2 for malformed input or bad usage. Reports go to stdout as JSON, logs
go to stderr.
"""
from pathlib import Path
from typing import List, Optional
import argparse
import logging
import sys

import yaml

from src.config_manager import ConfigManager
from src.database import Database
from src.decomposition import decompose
from src.errors import DecompositionError, HomCheckError, NotSelfAdjointError
from src.formats import (
    compiled, decomposition_to_document, dumps, fuzz_report_to_document, map_to_document,
    parse_element, parse_map, read_document, verification_report_to_document, write_document,
)
from src.fuzzing.fuzzer import TheoremFuzzer
from src.homomorphisms.verification import verify
from src.logger_setup import setup_logger
from src.spectral.norms import norm_by_bisection, operator_norm, order_norm

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_LAW_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Flag values that parse but make no sense."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homcheck",
        description="Verify, decompose and fuzz ring *-homomorphisms between matrix algebras"
    )
    parser.add_argument('--config', help='Path to a YAML config file')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Console log level (overrides config)')
    parser.add_argument('--journal', help='Record runs in this SQLite journal')

    commands = parser.add_subparsers(dest='command', required=True)

    norm = commands.add_parser('norm', help='Operator norm of an element')
    norm.add_argument('element', help='Element document')
    norm.add_argument('--method', choices=['eig', 'bisect', 'order'], default='eig')
    norm.add_argument('--precision', type=float, help='Bisection width or selfadjointness tolerance')

    check = commands.add_parser('verify', help='Check the homomorphism laws of a map')
    check.add_argument('map', help='Map document')
    check.add_argument('--trials', type=int)
    check.add_argument('--seed', type=int)
    check.add_argument('--tol', type=float)

    split = commands.add_parser('decompose', help='Split a map into linear and conjugate-linear parts')
    split.add_argument('map', help='Map document')
    split.add_argument('--tol', type=float)
    split.add_argument('--no-restrict', action='store_true',
                       help='Work in the full codomain instead of the generated subalgebra')
    split.add_argument('--strict', action='store_true',
                       help='Check centrality against the whole generated subalgebra')
    split.add_argument('--emit-parts', metavar='DIR', help='Write phi1.json and phi2.json here')

    fuzz = commands.add_parser('fuzz', help='Fuzz the theorems over random homomorphisms')
    fuzz.add_argument('--trials', type=int)
    fuzz.add_argument('--seed', type=int)
    fuzz.add_argument('--max-dim', type=int)
    fuzz.add_argument('--tol', type=float)
    fuzz.add_argument('--workers', type=int)
    fuzz.add_argument('--samples', type=int)
    fuzz.add_argument('--negatives', action='store_true', help='Also check the mutated near-misses')

    return parser


def _pick(value, config: ConfigManager, key: str, default):
    return value if value is not None else config.get(key, default)


def _journal(args, config: ConfigManager) -> Optional[Database]:
    if args.journal:
        return Database(args.journal)
    if config.get('journal_enabled', False):
        return Database(config.get('journal_path', 'data/homcheck.db'))
    return None


def cmd_norm(args, config: ConfigManager) -> int:
    a = parse_element(read_document(args.element))
    if args.method == 'bisect':
        precision = _pick(args.precision, config, 'bisection_precision', 1e-6)
        value = norm_by_bisection(a, precision, config.get('dilation_tolerance', 1e-12))
    elif args.method == 'order':
        precision = args.precision if args.precision is not None else 1e-10
        value = order_norm(
            a, precision, config.get('eigensolver', 'lapack'),
            config.get('jacobi_tolerance', 1e-14), config.get('jacobi_max_sweeps', 100),
        )
    else:
        value = operator_norm(a)
    print(f"{value:#.13g}")
    return EXIT_OK


def cmd_verify(args, config: ConfigManager) -> int:
    document = read_document(args.map)
    m = compiled(parse_map(document))
    seed = _pick(args.seed, config, 'seed', 0)
    tol = _pick(args.tol, config, 'tolerance', 1e-8)
    report = verify(m, _pick(args.trials, config, 'trials', 100), seed, tol)
    output = verification_report_to_document(report)
    print(dumps(output))

    journal = _journal(args, config)
    if journal:
        journal.record_run('verify', output, report.passed, seed, tol, document)
    return EXIT_OK if report.passed else EXIT_LAW_FAILED


def cmd_decompose(args, config: ConfigManager) -> int:
    document = read_document(args.map)
    m = compiled(parse_map(document))
    seed = config.get('seed', 0)
    tol = _pick(args.tol, config, 'tolerance', 1e-8)
    journal = _journal(args, config)

    report = verify(m, config.get('trials', 100), seed, tol)
    if not report.passed:
        logger.error(f"Map fails verification ({', '.join(report.failed_laws())}); not decomposing")
        output = verification_report_to_document(report)
        print(dumps(output))
        if journal:
            journal.record_run('decompose', output, False, seed, tol, document)
        return EXIT_LAW_FAILED

    try:
        decomposition = decompose(
            m, tol,
            restrict=not args.no_restrict,
            strict=args.strict,
            rank_tol=config.get('rank_threshold', 1e-10),
            reconstruction_tol=config.get('reconstruction_tolerance', 1e-10),
        )
        passed = True
    except DecompositionError as e:
        logger.error(str(e))
        decomposition = e.decomposition
        passed = False

    output = decomposition_to_document(decomposition)
    print(dumps(output))
    if journal:
        journal.record_run('decompose', output, passed, seed, tol, document)
    if not passed:
        return EXIT_LAW_FAILED

    if args.emit_parts:
        directory = Path(args.emit_parts)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            write_document(map_to_document(decomposition.phi1), directory / "phi1.json")
            write_document(map_to_document(decomposition.phi2), directory / "phi2.json")
        except OSError as e:
            logger.error(f"Cannot write parts to {directory}: {e}")
            return EXIT_USAGE
        logger.info(f"Wrote phi1.json and phi2.json to {directory}")
    return EXIT_OK


def cmd_fuzz(args, config: ConfigManager) -> int:
    for flag, value in (('--trials', args.trials), ('--max-dim', args.max_dim),
                        ('--workers', args.workers), ('--samples', args.samples)):
        if value is not None and value < 1:
            raise UsageError(f"{flag} must be at least 1, got {value}")

    fuzzer = TheoremFuzzer.from_config(
        config,
        trials=args.trials,
        seed=args.seed,
        max_block_dim=args.max_dim,
        tol=args.tol,
        samples=args.samples,
        workers=args.workers,
        include_negatives=args.negatives,
    )
    report = fuzzer.run()
    output = fuzz_report_to_document(report)
    print(dumps(output))

    journal = _journal(args, config)
    if journal:
        run_id = journal.record_run('fuzz', output, report.passed, fuzzer.seed, fuzzer.tol)
        journal.record_counterexamples(run_id, output['counterexamples'])
    return EXIT_OK if report.passed else EXIT_LAW_FAILED


COMMANDS = {
    'norm': cmd_norm,
    'verify': cmd_verify,
    'decompose': cmd_decompose,
    'fuzz': cmd_fuzz,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        config = ConfigManager(args.config)
    except (FileNotFoundError, ValueError, yaml.YAMLError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logger(
        "src",
        args.log_level or config.get('log_level', 'INFO'),
        config.get('log_dir'),
    )

    try:
        return COMMANDS[args.command](args, config)
    except NotSelfAdjointError as e:
        logger.error(f"The order norm needs a selfadjoint element: {e}")
        return EXIT_USAGE
    except (HomCheckError, UsageError, ValueError) as e:
        logger.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
