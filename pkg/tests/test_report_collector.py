"""
Tests for ReportCollector.
Tests ordering, duplicate detection and per-check summaries.
"""
import pytest

from src.quadlat.services.report_collector import InstanceReport, ReportCollector
from src.quadlat.services.verify import CheckResult


def _report(instance_id, *outcomes):
    checks = tuple(
        CheckResult(name=name, passed=ok, lhs='x', rhs='x' if ok else 'y')
        for name, ok in outcomes
    )
    return InstanceReport(id=instance_id, checks=checks)


class TestReportCollector:
    """Test suite for ReportCollector class."""

    def test_initialization(self, report_collector):
        """Test ReportCollector starts empty."""
        assert report_collector.get_report_count() == 0
        assert report_collector.get_reports() == []
        assert report_collector.all_passed()

    def test_reports_ordered_by_id(self, report_collector):
        """Test that out-of-order arrivals come back sorted."""
        for i in (2, 0, 1):
            report_collector.add_report(_report(i, ('lalw', True)))
        assert [r.id for r in report_collector.get_reports()] == [0, 1, 2]

    def test_get_reports_returns_copy(self, report_collector):
        """Test that get_reports returns a new list each time."""
        report_collector.add_report(_report(0, ('lalw', True)))
        first = report_collector.get_reports()
        first.append(_report(9, ('lalw', True)))
        assert report_collector.get_report_count() == 1

    def test_duplicate_id_rejected(self, report_collector):
        """Test that a second report for one instance raises ValueError."""
        report_collector.add_report(_report(0, ('lalw', True)))
        with pytest.raises(ValueError):
            report_collector.add_report(_report(0, ('lalw', True)))

    def test_failed_report_logged(self, report_collector, caplog):
        """Test that a failing instance is logged at WARNING."""
        with caplog.at_level('WARNING'):
            report_collector.add_report(_report(3, ('theorem1', False), ('lalw', True)))
        assert 'instance 3 failed checks: theorem1' in caplog.text
        assert not report_collector.all_passed()

    def test_summary(self, report_collector):
        """Test pass/fail counts per check name."""
        report_collector.add_report(_report(0, ('theorem1', True), ('lalw', True)))
        report_collector.add_report(_report(1, ('theorem1', False), ('lalw', True)))
        assert report_collector.summary() == {
            'theorem1': {'passed': 1, 'failed': 1},
            'lalw': {'passed': 2, 'failed': 0},
        }

    def test_clear(self, report_collector):
        """Test clearing drops every report."""
        report_collector.add_report(_report(0, ('lalw', True)))
        report_collector.clear()
        assert report_collector.get_report_count() == 0

    def test_instance_report_to_dict(self):
        """Test the serialized form of an instance report."""
        data = _report(4, ('lalw', True)).to_dict()
        assert data['id'] == 4
        assert data['checks'][0]['name'] == 'lalw'
        assert data['checks'][0]['pass'] is True

    def test_empty_report_passes(self):
        """Test that an instance without checks counts as passed."""
        assert InstanceReport(id=0).passed
