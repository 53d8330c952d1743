#!/usr/bin/env python3
"""Entry point script for gerechte.

This script provides a simple way to run the gerechte command line.
"""

import sys
from gerechte.cli import main

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nProgram interrupted.", file=sys.stderr)
        sys.exit(130)
