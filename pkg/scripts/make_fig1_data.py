#!/usr/bin/env python3
"""Emit the three reference collapse/revival curves and print their
revival metrics.  Equivalent to `milburnsim fig1 <out_dir>`."""

import sys

from milburnsim.cli import main

if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "fig1-data"
    sys.exit(main(["fig1", out_dir]))
