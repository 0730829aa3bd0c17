"""
Command-line entry point.
Parses arguments, configures logging and dispatches to the command handlers.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to Python path
# This allows the module to be run from any directory
project_root = Path(__file__).resolve().parent.parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.quadlat import __version__
from src.quadlat.cli.commands import cmd_gen, cmd_invariants, cmd_verify
from src.quadlat.config.config import Config
from src.quadlat.utils.error_handlers import EXIT_INPUT_ERROR, ConfigError
from src.quadlat.utils.logger import level_from_name, setup_logger

logger = logging.getLogger(__name__)


def _add_corpus_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--seed', type=int, default=Config.SEED,
                        help='corpus seed (default: %(default)s)')
    parser.add_argument('--count', type=int, default=Config.COUNT,
                        help='number of instances (default: %(default)s)')
    parser.add_argument('--max-entry', type=int, default=Config.MAX_ENTRY,
                        help='bound on Gram entries (default: %(default)s)')
    parser.add_argument('--max-prime', type=int, default=Config.MAX_PRIME,
                        help='largest prime allowed in det and q (default: %(default)s)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='quadlat',
        description='Exact verification of lattice, Clifford order and '
                    'quaternary complement identities over Q.',
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--quiet', action='store_true', help='only log warnings and errors')
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='run all checks on a corpus')
    source = verify.add_mutually_exclusive_group()
    source.add_argument('--instances', metavar='FILE', help='instance file to verify')
    source.add_argument('--gen', action='store_true',
                        help='generate the corpus from --seed/--count (default)')
    _add_corpus_flags(verify)
    verify.add_argument('--report', metavar='FILE', help='write the JSON report here (default: stdout)')
    verify.add_argument('--workers', type=int, default=Config.WORKERS,
                        help='worker processes (default: %(default)s)')
    verify.add_argument('--samples', type=int, default=Config.EQUIVARIANCE_SAMPLES,
                        help='random conjugating elements per instance (default: %(default)s)')
    verify.set_defaults(handler=cmd_verify)

    inv = sub.add_parser('invariants', help='print the invariants of a Gram matrix')
    inv.add_argument('--gram', required=True, help='Gram matrix as JSON, e.g. [[1,0,0],[0,1,0],[0,0,1]]')
    inv.add_argument('--primes', help='comma-separated primes for core dimensions (default: 2,3)')
    inv.add_argument('--format', choices=('json', 'table'), default='json')
    inv.set_defaults(handler=cmd_invariants)

    gen = sub.add_parser('gen', help='write a seeded corpus instance file')
    _add_corpus_flags(gen)
    gen.add_argument('-o', '--output', metavar='FILE', help='output file (default: stdout)')
    gen.set_defaults(handler=cmd_gen)

    return parser


def _validate_args(args: argparse.Namespace) -> Optional[str]:
    for flag in ('count', 'samples'):
        if getattr(args, flag, 0) < 0:
            return f"--{flag} must be non-negative"
    if getattr(args, 'workers', 1) < 1:
        return "--workers must be at least 1"
    if getattr(args, 'max_entry', 1) < 1:
        return "--max-entry must be at least 1"
    if getattr(args, 'max_prime', 2) < 2:
        return "--max-prime must be at least 2"
    return None


def main(argv: Optional[List[str]] = None) -> int:
    """
    Runs the CLI.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        int: Process exit code (0 all passed, 1 check failed, 2 input error)
    """
    # Parser defaults come from Config, so it must be valid first.
    try:
        Config.validate()
    except ConfigError as e:
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return e.exit_code

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR

    level = logging.WARNING if args.quiet else level_from_name(Config.LOG_LEVEL)
    setup_logger('src.quadlat', level=level)

    problem = _validate_args(args)
    if problem:
        parser.print_usage(sys.stderr)
        print(f"quadlat: error: {problem}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    logger.debug(f"Running command {args.command}")
    return args.handler(args)


if __name__ == '__main__':
    sys.exit(main())
