"""
gaugeflow command-line entry point.

    python app.py homology --input complex.json
    python app.py run --preset z2_triangle --out runs/z2
"""

import sys

from gaugeflow.cli import main

if __name__ == "__main__":
    sys.exit(main())
