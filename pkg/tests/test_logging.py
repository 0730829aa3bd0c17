"""
Tests for logger setup and run-id tracing.
"""
import logging

from src.quadlat.utils.logger import level_from_name, setup_logger
from src.quadlat.utils.run_context import RunContextFilter, get_run_id, run_context


class TestRunContext:
    """Test suite for run-id binding."""

    def test_unbound_outside_run(self):
        """Test that no run id is active by default."""
        assert get_run_id() is None

    def test_nested_runs(self):
        """Test that ids are restored when blocks exit."""
        with run_context('#1'):
            assert get_run_id() == '#1'
            with run_context('#2'):
                assert get_run_id() == '#2'
            assert get_run_id() == '#1'
        assert get_run_id() is None

    def test_filter_adds_run_id(self):
        """Test that records get the active id or N/A."""
        record = logging.LogRecord('x', logging.INFO, __file__, 1, 'msg', None, None)
        f = RunContextFilter()
        assert f.filter(record)
        assert record.run_id == 'N/A'
        with run_context('#3'):
            f.filter(record)
        assert record.run_id == '#3'


class TestSetupLogger:
    """Test suite for setup_logger."""

    def test_single_handler(self):
        """Test that repeated setup does not stack handlers."""
        logger = setup_logger('quadlat.test.single', level=logging.DEBUG)
        setup_logger('quadlat.test.single', level=logging.ERROR)
        assert len(logger.handlers) == 1
        assert logger.level == logging.ERROR
        assert logger.handlers[0].level == logging.ERROR

    def test_run_id_in_format(self):
        """Test that the default format carries the run id."""
        logger = setup_logger('quadlat.test.format')
        handler = logger.handlers[0]
        assert '%(run_id)s' in handler.formatter._fmt
        assert any(isinstance(f, RunContextFilter) for f in handler.filters)

    def test_without_run_id(self):
        """Test the plain format."""
        logger = setup_logger('quadlat.test.plain', include_run_id=False)
        assert '%(run_id)s' not in logger.handlers[0].formatter._fmt
        assert not logger.handlers[0].filters

    def test_level_from_name(self):
        """Test level-name mapping, case-insensitive, INFO by default."""
        assert level_from_name('debug') == logging.DEBUG
        assert level_from_name('WARNING') == logging.WARNING
        assert level_from_name('nonsense') == logging.INFO
