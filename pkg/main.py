#!/usr/bin/env python3
"""
Main entry point for adhesive-egg.
"""

import sys
from pathlib import Path

# The package is ``src``; put the repository root on the path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli.commands import main

if __name__ == '__main__':
    sys.exit(main())
