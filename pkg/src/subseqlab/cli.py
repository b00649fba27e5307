"""Command-line front end: exact counting, the two capacity/polymer figures,
the alignment separation experiment, and the verification suite.

Conventions: all energies are reported in nats unless --bits is given; floats
are printed with 12 significant digits; CSV is UTF-8 with a header row and LF
endings; every subcommand honors --seed (default 42) and reruns are
byte-identical.  RSM_THREADS > 1 fans grid points out to worker processes;
per-sample substreams make the output independent of the worker count.
Exit codes: 0 success, 1 verification failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import math
import os
import subprocess
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .alignment import alignment_experiment
from .annealed import LN2
from .core import BitString, Seed
from .montecarlo import CurveSpec, mutual_info_point, polymer_comparison_curve
from .partition import count_embeddings_exact
from .svg import render_line_chart
from . import verify as verify_mod


@dataclass(frozen=True)
class RunConfig:
    """Echoed into JSON output so runs are self-describing."""

    command: str
    grid: tuple = ()
    n: int = 0
    samples: int = 0
    seed: int = 42
    bits: bool = False
    fmt: str = "csv"


def _version_string() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=5,
            cwd=os.path.dirname(os.path.abspath(__file__)),
        )
        if out.returncode == 0 and out.stdout.strip():
            return out.stdout.strip()
    except Exception:
        pass
    return f"subseqlab-{__version__}"


def _fmt(value) -> str:
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def _write_table(header, rows, config: RunConfig, out_path: Optional[str]):
    if config.fmt == "json":
        doc = {
            "config": dataclasses.asdict(config),
            "version": _version_string(),
            "rows": [dict(zip(header, row)) for row in rows],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _worker_count() -> int:
    raw = os.environ.get("RSM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"RSM_THREADS must be an integer, got {raw!r}")


def _grid_map(fn, args_list):
    """Evaluate fn over the grid, in parallel when RSM_THREADS > 1; output
    order follows grid order regardless of completion order."""
    workers = _worker_count()
    if workers == 1 or len(args_list) <= 1:
        return [fn(*a) for a in args_list]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *a) for a in args_list]
        return [f.result() for f in futures]


def _parse_grid(text: str):
    vals = tuple(float(v) for v in text.split(",") if v.strip() != "")
    if not vals:
        raise ValueError("empty grid")
    return vals


def _unit_scale(bits: bool) -> float:
    return 1.0 / LN2 if bits else 1.0


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    x = BitString.from_text(args.x)
    y = BitString.from_text(args.y)
    if len(y) > len(x):
        raise ValueError(f"|y|={len(y)} exceeds |x|={len(x)}")
    z = count_embeddings_exact(x, y)
    print(f"count: {z}")
    print(f"log: {_fmt(math.log(z)) if z > 0 else '-inf'}")
    return 0


def cmd_figure1(args) -> int:
    grid = _parse_grid(args.grid)
    spec = CurveSpec(grid=grid, n=args.n, samples=args.samples, seed=Seed(args.seed))
    config = RunConfig(
        command="figure1", grid=spec.grid, n=spec.n, samples=spec.samples,
        seed=args.seed, bits=args.bits, fmt=args.format,
    )
    work = [
        (p, spec.n, spec.samples, spec.seed.substream(g * spec.samples))
        for g, p in enumerate(spec.grid)
    ]
    rows_raw = _grid_map(mutual_info_point, work)
    u = _unit_scale(args.bits)
    header = ["p", "dgv_lower", "mc_capacity", "mc_stderr", "upper_annealed", "zero_fraction"]
    rows = [
        (r.p, r.lower_dgv * u, r.mc_capacity * u, r.mc_stderr * u, r.upper_annealed * u, r.zero_fraction)
        for r in rows_raw
    ]
    _write_table(header, rows, config, args.out)
    if args.svg:
        unit = "bits" if args.bits else "nats"
        chart = render_line_chart(
            [
                {"name": "greedy lower bound", "color": "green", "dashed": True,
                 "points": [(r[0], r[1]) for r in rows]},
                {"name": "simulated capacity", "color": "orange",
                 "points": [(r[0], r[2]) for r in rows]},
                {"name": "annealed upper bound", "color": "blue",
                 "points": [(r[0], r[4]) for r in rows]},
            ],
            x_label="deletion probability p",
            y_label=f"rate ({unit})",
            title="Uniform-code deletion channel rate: bounds and simulation",
        )
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(chart)
    return 0


def cmd_figure2(args) -> int:
    grid = _parse_grid(args.alphas)
    spec = CurveSpec(grid=grid, n=args.n, samples=args.samples, seed=Seed(args.seed))
    if any(not 0 < a <= 0.5 for a in spec.grid):
        raise ValueError("alpha grid must lie in (0, 1/2]")
    config = RunConfig(
        command="figure2", grid=spec.grid, n=spec.n, samples=spec.samples,
        seed=args.seed, bits=args.bits, fmt=args.format,
    )
    rows_raw = polymer_comparison_curve(spec)
    u = _unit_scale(args.bits)
    header = ["alpha", "strict_weak_exact", "null_mc", "null_mc_stderr", "null_zero_fraction"]
    rows = [
        (r.alpha, r.strict_weak_exact * u, r.null_mc * u, r.null_mc_stderr * u, r.null_zero_fraction)
        for r in rows_raw
    ]
    _write_table(header, rows, config, args.out)
    if args.svg:
        unit = "bits" if args.bits else "nats"
        chart = render_line_chart(
            [
                {"name": "Gamma polymer (exact)", "color": "blue",
                 "points": [(r[0], r[1]) for r in rows]},
                {"name": "null model (simulated)", "color": "orange",
                 "points": [(r[0], r[2]) for r in rows]},
            ],
            x_label="density alpha",
            y_label=f"free energy ({unit})",
            title="Exactly solvable polymer vs simulated null model",
        )
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(chart)
    return 0


def cmd_alignment_experiment(args) -> int:
    result = alignment_experiment(args.alpha, args.b, args.n, args.trials, Seed(args.seed))
    config = RunConfig(
        command="alignment-experiment", grid=(args.alpha,), n=args.n,
        samples=args.trials, seed=args.seed, fmt=args.format,
    )
    header = ["law", "trials", "good_count", "good_frequency"]
    rows = [
        ("planted", result.trials, result.planted_good, result.planted_frequency),
        ("null", result.trials, result.null_good, result.null_frequency),
    ]
    _write_table(header, rows, config, args.out)
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.run(args.level)
    failed = 0
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{tag}  {r.name}{detail}")
        failed += not r.passed
    print(f"{len(results) - failed}/{len(results)} checks passed [{args.level}]")
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subseqlab",
        description="Subsequence-embedding partition functions and deletion-channel bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact embedding count of y into x")
    p.add_argument("x", help="ambient bit string, e.g. 10110")
    p.add_argument("y", help="candidate subsequence, e.g. 11")
    p.set_defaults(fn=cmd_count)

    def common(p):
        p.add_argument("--n", type=int, default=10_000, help="ambient length (default 10000)")
        p.add_argument("--samples", type=int, default=8, help="samples per grid point (default 8)")
        p.add_argument("--seed", type=int, default=42, help="master seed (default 42)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--svg", default=None, help="also render an SVG chart to this path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--bits", action="store_true", help="report bits instead of nats")

    default_p_grid = ",".join(f"{0.05 * k:g}" for k in range(20))
    p = sub.add_parser("figure1", help="capacity bounds and simulation over a p grid")
    p.add_argument("--grid", default=default_p_grid, help="comma-separated p values")
    common(p)
    p.set_defaults(fn=cmd_figure1)

    default_a_grid = ",".join(f"{0.05 * k:g}" for k in range(1, 11))
    p = sub.add_parser("figure2", help="solvable polymer vs null model over an alpha grid")
    p.add_argument("--alphas", default=default_a_grid, help="comma-separated alpha values in (0, 1/2]")
    common(p)
    p.set_defaults(fn=cmd_figure2)

    p = sub.add_parser("alignment-experiment", help="good-set frequencies under both laws")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--b", type=int, default=64, help="block length")
    p.add_argument("--n", type=int, default=6400, help="ambient length")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=cmd_alignment_experiment)

    p = sub.add_parser("verify", help="run the oracle checks")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
