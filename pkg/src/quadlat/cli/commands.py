"""
CLI command handlers.
Each handler takes the parsed argparse namespace and returns an exit code.
"""
from argparse import Namespace
from typing import Any, Dict, List
import logging
import sys

from src.quadlat.cli.serialization import (
    dump_json,
    instances_to_dict,
    load_instances,
    parse_gram_text,
    report_to_dict,
)
from src.quadlat.config.config import Config
from src.quadlat.core.exactnum import check_place, format_place
from src.quadlat.core.invariants import SpaceInvariants, space_invariants
from src.quadlat.core.qspace import QuadSpace
from src.quadlat.services.corpus import gen_corpus
from src.quadlat.services.verification_service import VerificationService
from src.quadlat.utils.error_handlers import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    InputError,
    InvalidPlace,
    handle_errors,
)

logger = logging.getLogger(__name__)

DEFAULT_PRIMES = (2, 3)


def _entries_from_args(args: Namespace) -> List:
    if args.instances and args.gen:
        raise InputError("--instances and --gen are mutually exclusive", code='INVALID_ARGUMENTS')
    if args.instances:
        return load_instances(args.instances)
    return gen_corpus(args.seed, args.count, args.max_entry, args.max_prime)


@handle_errors
def cmd_verify(args: Namespace) -> int:
    """
    Runs every check on each instance and writes the JSON report.

    Returns:
        0 if every check passed, 1 if any failed
    """
    entries = _entries_from_args(args)
    service = VerificationService(
        workers=args.workers,
        equivariance_samples=args.samples,
        max_rounds=Config.CLOSURE_MAX_ROUNDS,
        seed=args.seed,
    )
    collector = service.run(entries)

    meta: Dict[str, Any] = {'seed': args.seed, 'count': len(entries)}
    if args.instances:
        meta['instances'] = args.instances
    text = dump_json(report_to_dict(collector, meta), args.report)
    if args.report:
        logger.info(f"Report written to {args.report}")
    else:
        sys.stdout.write(text)

    if collector.all_passed():
        logger.info(f"All checks passed on {len(entries)} instances")
        return EXIT_OK
    failed = sum(not r.passed for r in collector.get_reports())
    logger.warning(f"{failed} of {len(entries)} instances failed at least one check")
    return EXIT_CHECK_FAILED


def _parse_primes(text: str) -> List[int]:
    try:
        primes = [int(p) for p in text.split(',') if p.strip()]
    except ValueError:
        raise InputError(f"--primes: expected comma-separated integers, got {text!r}",
                         code='INVALID_ARGUMENTS')
    try:
        return [check_place(p) for p in primes]
    except InvalidPlace as e:
        raise InputError(f"--primes: {e.message}", code='INVALID_ARGUMENTS')


def invariants_to_dict(inv: SpaceInvariants, primes: List[int]) -> Dict[str, Any]:
    """The invariant record printed by the invariants command."""
    data: Dict[str, Any] = {
        'n': inv.n,
        'delta': int(inv.delta),
        'D_K': str(inv.disc_field_disc),
        'ram': [format_place(v) for v in inv.q_class.ram],
        'hilbert_pair': [str(inv.q_class.a), str(inv.q_class.b)],
        's_inf': inv.s_inf,
    }
    for p, t in inv.core_dims(primes).items():
        data[f"t_{p}"] = t
    return data


def _render_table(data: Dict[str, Any]) -> str:
    width = max(len(k) for k in data)
    lines = []
    for key, value in data.items():
        if isinstance(value, list):
            value = ', '.join(str(v) for v in value) or '-'
        lines.append(f"{key.ljust(width)}  {value}")
    return '\n'.join(lines) + '\n'


@handle_errors
def cmd_invariants(args: Namespace) -> int:
    """Prints the invariants of a ternary or quaternary Gram matrix."""
    space = QuadSpace(parse_gram_text(args.gram))
    primes = _parse_primes(args.primes) if args.primes else list(DEFAULT_PRIMES)
    data = invariants_to_dict(space_invariants(space), primes)
    if args.format == 'table':
        sys.stdout.write(_render_table(data))
    else:
        sys.stdout.write(dump_json(data))
    return EXIT_OK


@handle_errors
def cmd_gen(args: Namespace) -> int:
    """Writes a seeded corpus as an instance file (stdout without -o)."""
    entries = gen_corpus(args.seed, args.count, args.max_entry, args.max_prime)
    text = dump_json(instances_to_dict(entries), args.output)
    if args.output:
        logger.info(f"Wrote {len(entries)} instances to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK
