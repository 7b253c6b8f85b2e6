#!/usr/bin/env python3
"""Run the acceptance criteria and print one PASS/FAIL line per criterion.

    python3 scripts/run_acceptance.py [-k EXPR]
"""

import argparse
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-k", default=None, help="pytest -k expression to select criteria")
    args = ap.parse_args()
    argv = ["-q", "-p", "no:cacheprovider", str(ROOT / "tests" / "test_acceptance.py")]
    if args.k:
        argv += ["-k", args.k]
    return pytest.main(argv)


if __name__ == "__main__":
    sys.exit(main())
