"""
Report collector.
Accumulates per-instance check results and keeps them ordered by instance id.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple
import logging

from src.quadlat.services.verify import CheckResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceReport:
    """All check results for one instance."""
    id: int
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.id, 'checks': [c.to_dict() for c in self.checks]}


class ReportCollector:
    """
    Collects instance reports for a verification run.
    Reports may arrive in any order; results are always returned by id.
    """

    def __init__(self):
        """
        Initializes an empty collector.
        """
        self.reports: Dict[int, InstanceReport] = {}
        logger.debug("ReportCollector initialized")

    def add_report(self, report: InstanceReport) -> None:
        """
        Adds the report of one instance.

        Args:
            report: Results for a single instance

        Raises:
            ValueError: If a report with the same id was already added
        """
        if report.id in self.reports:
            raise ValueError(f"duplicate report for instance {report.id}")
        self.reports[report.id] = report
        if not report.passed:
            failed = [c.name for c in report.checks if not c.passed]
            logger.warning(f"instance {report.id} failed checks: {', '.join(failed)}")

    def get_reports(self) -> List[InstanceReport]:
        """
        Returns the collected reports ordered by instance id.

        Returns:
            A new list; mutating it does not affect the collector
        """
        return [self.reports[i] for i in sorted(self.reports)]

    def clear(self) -> None:
        """
        Drops all collected reports.
        """
        count = len(self.reports)
        self.reports = {}
        logger.info(f"Cleared {count} instance reports")

    def get_report_count(self) -> int:
        return len(self.reports)

    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports.values())

    def summary(self) -> Dict[str, Dict[str, int]]:
        """
        Pass/fail counts per check name.

        Returns:
            {check name: {'passed': n, 'failed': m}}
        """
        counts: Dict[str, Dict[str, int]] = {}
        for report in self.get_reports():
            for check in report.checks:
                entry = counts.setdefault(check.name, {'passed': 0, 'failed': 0})
                entry['passed' if check.passed else 'failed'] += 1
        return counts
