"""
Run context utilities.
Tracks which corpus instance is being verified so log lines can be traced.
"""
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional
import logging

_run_id: ContextVar[Optional[str]] = ContextVar('quadlat_run_id', default=None)


def get_run_id() -> Optional[str]:
    """
    Gets the id of the instance currently being processed.

    Returns:
        str or None: The active run id, None outside a run
    """
    return _run_id.get()


@contextmanager
def run_context(run_id: str) -> Iterator[str]:
    """
    Binds a run id for the duration of a block.

    Args:
        run_id: Identifier of the instance being verified (e.g. 'seed42-#7')

    Yields:
        str: The bound run id
    """
    token = _run_id.set(run_id)
    try:
        yield run_id
    finally:
        _run_id.reset(token)


class RunContextFilter(logging.Filter):
    """
    Logging filter that adds the run id to log records.
    Allows tracing one instance's checks through the logs.
    """

    def filter(self, record):
        """
        Adds run_id to log record if available.

        Args:
            record: Log record to modify

        Returns:
            bool: Always True (doesn't filter out records)
        """
        record.run_id = get_run_id() or 'N/A'
        return True
