#!/usr/bin/env python3
"""Run the full oracle verification suite with the bundled defaults.

Equivalent to `icl verify --config verify.cfg --out <dir>`; exits nonzero
if any check fails.  Takes a few minutes at the default sample count.
"""

import argparse
import sys

from icl import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/verify", help="report directory")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    return cli.main(
        ["verify", "--config", "verify.cfg", "--out", args.out, "--seed", str(args.seed)]
    )


if __name__ == "__main__":
    sys.exit(main())
