#!/usr/bin/env python3
"""Regenerate every bundled figure scan (CSV + SVG) into an output tree.

Runs the shipped presets through the CLI:

    fig2  low-gain visibility vs T under three backgrounds   (scan-visibility)
    fig3  high-gain rebalancing comparison                   (scan-visibility)
    fig4  heralded vs singles vs optimal attenuation         (scan-visibility)
    fig5  log-log difference-SNR scaling                     (scan-snr)
    fringe  single-point fringe trace with heralded column   (fringe)
"""

import argparse
import sys
from pathlib import Path

from icl import cli

RUNS = (
    ("scan-visibility", "fig2.cfg", "fig2"),
    ("scan-visibility", "fig3.cfg", "fig3"),
    ("scan-visibility", "fig4.cfg", "fig4"),
    ("scan-snr", "fig5.cfg", "fig5"),
    ("fringe", "fringe.cfg", "fringe"),
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out", help="output root (default: ./out)")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    root = Path(args.out)
    for command, preset, subdir in RUNS:
        target = root / subdir
        code = cli.main(
            [command, "--config", preset, "--out", str(target), "--seed", str(args.seed)]
        )
        if code != 0:
            print(f"{command} {preset} failed with exit code {code}", file=sys.stderr)
            return code
        files = ", ".join(sorted(p.name for p in target.iterdir()))
        print(f"{subdir}: {files}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
