#!/usr/bin/env python3
"""Reproduce the two headline curves at full scale (N = 10,000, 8 samples per
grid point) into out/.  Takes a few minutes; set RSM_THREADS to parallelize."""

import pathlib
import sys

from subseqlab.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"


def run() -> int:
    OUT.mkdir(exist_ok=True)
    rc = main(
        [
            "figure1",
            "--out", str(OUT / "figure1.csv"),
            "--svg", str(OUT / "figure1.svg"),
        ]
    )
    if rc:
        return rc
    rc = main(
        [
            "figure2",
            "--out", str(OUT / "figure2.csv"),
            "--svg", str(OUT / "figure2.svg"),
        ]
    )
    print(f"wrote {OUT}/figure1.{{csv,svg}} and {OUT}/figure2.{{csv,svg}}")
    return rc


if __name__ == "__main__":
    sys.exit(run())
