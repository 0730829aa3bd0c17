"""
Verification service.
Runs every check against each corpus entry, optionally across worker processes.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Optional, Sequence, Tuple
import logging
import random

from src.quadlat.services.corpus import CorpusEntry
from src.quadlat.services.report_collector import InstanceReport, ReportCollector
from src.quadlat.services.verify import (
    build_instance,
    check_char_and_invariants,
    check_disc_formulas,
    check_equivariance,
    check_lalw,
    check_lemma1,
    check_theorem1,
    random_alpha,
)
from src.quadlat.utils.run_context import run_context

logger = logging.getLogger(__name__)


def verify_entry(
    instance_id: int,
    entry: CorpusEntry,
    equivariance_samples: int = 2,
    max_rounds: Optional[int] = None,
    seed: int = 0
) -> InstanceReport:
    """
    Builds the instance for one entry and runs all six checks on it.

    Raises:
        QuadLatError: If the entry itself is invalid (e.g. isotropic h)
    """
    with run_context(f"#{instance_id}"):
        inst = build_instance(entry.gram, entry.h, entry.lattice, max_rounds)
        rng = random.Random(f"{seed}:{instance_id}")
        alphas = [inst.quat.host.unit()]
        alphas += [random_alpha(inst.quat, rng) for _ in range(equivariance_samples)]
        checks = (
            check_theorem1(inst),
            check_lemma1(inst.lw, inst.psi, max_rounds),
            check_lalw(inst, max_rounds),
            check_disc_formulas(inst, max_rounds),
            check_char_and_invariants(inst),
            check_equivariance(inst, alphas, max_rounds),
        )
        logger.debug(f"verified: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
        return InstanceReport(id=instance_id, checks=checks)


def _verify_job(job: Tuple[int, CorpusEntry, int, Optional[int], int]) -> InstanceReport:
    return verify_entry(*job)


class VerificationService:
    """
    Service for verifying corpora.
    Fans instances out over a process pool when more than one worker is asked for.
    """

    def __init__(
        self,
        workers: int = 1,
        equivariance_samples: int = 2,
        max_rounds: Optional[int] = None,
        seed: int = 0
    ):
        """
        Initializes the verification service.

        Args:
            workers: Number of worker processes (1 runs in-process)
            equivariance_samples: Random conjugating elements per instance, besides 1
            max_rounds: Closure cap for Clifford orders (default: Config)
            seed: Seed for the equivariance samples
        """
        self.workers = workers
        self.equivariance_samples = equivariance_samples
        self.max_rounds = max_rounds
        self.seed = seed
        logger.info(f"VerificationService initialized with workers={workers}")

    def run(self, entries: Sequence[CorpusEntry]) -> ReportCollector:
        """
        Verifies all entries.

        Args:
            entries: Corpus entries, identified by their position

        Returns:
            ReportCollector holding one InstanceReport per entry
        """
        collector = ReportCollector()
        jobs = [
            (i, entry, self.equivariance_samples, self.max_rounds, self.seed)
            for i, entry in enumerate(entries)
        ]
        logger.info(f"Verifying {len(jobs)} instances")
        for report in self._execute(jobs):
            collector.add_report(report)
        summary = collector.summary()
        for name, counts in summary.items():
            logger.info(f"{name}: {counts['passed']} passed, {counts['failed']} failed")
        return collector

    def _execute(self, jobs: List[Tuple]) -> Iterable[InstanceReport]:
        if self.workers <= 1 or len(jobs) <= 1:
            return [_verify_job(job) for job in jobs]
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(_verify_job, jobs))
