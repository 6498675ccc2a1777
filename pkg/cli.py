"""
veemap - command-line entry point.

Run with: python cli.py <command> [options]
"""

import sys

from veemap.cli import main

if __name__ == "__main__":
    sys.exit(main())
