"""
Logging configuration for quadlat.
Provides consistent logging setup across all modules.
"""
import logging
import sys
from typing import Optional

from src.quadlat.utils.run_context import RunContextFilter


def setup_logger(
    name: str,
    level: int = logging.INFO,
    format_string: Optional[str] = None,
    include_run_id: bool = True
) -> logging.Logger:
    """
    Sets up and returns a logger with consistent formatting.

    Records go to stderr: stdout carries the JSON output of the CLI.

    Args:
        name: Name of the logger (typically 'quadlat' or __name__)
        level: Logging level (default: INFO)
        format_string: Custom format string (optional)
        include_run_id: Whether to include the instance run id in logs (default: True)

    Returns:
        logging.Logger: Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Avoid adding handlers multiple times
    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
        return logger

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)

    # Default format: timestamp - logger name - level - [run_id] - message
    if format_string is None:
        if include_run_id:
            format_string = '%(asctime)s - %(name)s - %(levelname)s - [%(run_id)s] - %(message)s'
        else:
            format_string = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    handler.setFormatter(logging.Formatter(format_string))

    if include_run_id:
        handler.addFilter(RunContextFilter())

    logger.addHandler(handler)

    return logger


def level_from_name(name: str) -> int:
    """
    Maps a configured level name ('DEBUG', 'INFO', ...) to a logging level.

    Args:
        name: Level name, case-insensitive

    Returns:
        int: logging level constant (INFO for unknown names)
    """
    return getattr(logging, name.upper(), logging.INFO)
