"""
adhesive-egg utilities: logging, configuration, s-expression reading, JSON
documents and DOT export.
"""

from .config import Config, get_config, set_config
from .logging import get_logger, setup_logging

__all__ = [
    'setup_logging',
    'get_logger',
    'Config',
    'get_config',
    'set_config',
]
