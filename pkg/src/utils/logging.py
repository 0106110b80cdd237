"""
Console logging for adhesive-egg.

All records go through the ``adhesive_egg`` logger and are written to stderr;
stdout carries only documents (JSON, DOT, terms).
"""

import logging
import sys
from typing import Optional, TextIO

try:
    from colorama import Fore, Style, init
    init(autoreset=True)
    COLORAMA_AVAILABLE = True
except ImportError:
    class _NoColor:
        def __getattr__(self, name):
            return ''

    Fore = Style = _NoColor()
    COLORAMA_AVAILABLE = False

LOGGER_NAME = 'adhesive_egg'
LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class ColoredFormatter(logging.Formatter):
    """Prefix each record with a coloured level tag."""

    STYLES = {
        'DEBUG': (Fore.CYAN, '..'),
        'INFO': (Fore.BLUE, '--'),
        'WARNING': (Fore.YELLOW, '!!'),
        'ERROR': (Fore.RED, 'xx'),
        'CRITICAL': (Fore.MAGENTA, '##'),
    }

    def format(self, record):
        color, tag = self.STYLES.get(record.levelname, ('', ''))
        shown = logging.makeLogRecord(record.__dict__)
        shown.levelname = f"{color}{tag} {record.levelname.lower():<7}{Style.RESET_ALL}"
        return super().format(shown)


def setup_logging(level: str = "INFO", stream: Optional[TextIO] = None) -> logging.Logger:
    """
    Configure the package logger; safe to call once per CLI invocation.

    Args:
        level: One of DEBUG, INFO, WARNING, ERROR, CRITICAL
        stream: Destination, stderr when omitted

    Returns:
        The ``adhesive_egg`` logger
    """
    name = level.upper()
    if name not in LEVELS:
        raise ValueError(f"unknown log level {level!r}")

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(name)
    logger.propagate = False
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ColoredFormatter("%(levelname)s %(message)s"))
    logger.addHandler(handler)
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Return the package logger, or its child ``adhesive_egg.<name>``."""
    return logging.getLogger(LOGGER_NAME if name is None else f'{LOGGER_NAME}.{name}')


def log_info(message: str):
    get_logger().info(message)


def log_success(message: str):
    get_logger().info(f"{Fore.GREEN}{message}{Style.RESET_ALL}")


def log_warning(message: str):
    get_logger().warning(message)


def log_error(message: str, hint: Optional[str] = None):
    """Log an error, followed by a hint line when one is given."""
    logger = get_logger()
    logger.error(message)
    if hint:
        logger.info(f"{Fore.YELLOW}hint: {hint}{Style.RESET_ALL}")


def log_step(message: str):
    """Log the start of a saturation round or campaign phase."""
    get_logger().info(f"{Fore.CYAN}> {message}{Style.RESET_ALL}")


def log_verdict(subject: str, passed: bool, detail: str = ''):
    """Log a check or campaign outcome: success when it passed, warning otherwise."""
    suffix = f" ({detail})" if detail else ''
    if passed:
        log_success(f"{subject}: pass{suffix}")
    else:
        log_warning(f"{subject}: FAIL{suffix}")
