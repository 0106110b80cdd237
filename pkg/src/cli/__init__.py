"""
CLI interface for adhesive-egg.
"""

from .commands import main

__all__ = ["main"]
