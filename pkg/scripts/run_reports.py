#!/usr/bin/env python3
"""Generate every verification report into one output directory.

Thin driver around the CLI: runs the identity sweep, the splitting count
table with both correspondence checks, the curvature spectrum and the
analyticity certificates/decay profiles, then prints where the files went.

    python scripts/run_reports.py [--out DIR] [--config CFG.json]
"""

import argparse
import sys
from pathlib import Path

from hilbertfield.cli import main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="reports", help="output directory")
    parser.add_argument("--config", help="JSON run configuration")
    args = parser.parse_args(argv)
    cli_args = ["all", "--out", args.out]
    if args.config:
        cli_args += ["--config", args.config]
    status = main(cli_args)
    if status == 0:
        print(f"all suites passed; reports in {Path(args.out).resolve()}")
    else:
        print(f"exit status {status}; see reports in {Path(args.out).resolve()}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(run())
