"""Command-line pipeline: ``design``, ``analyze``, ``filter``, ``report``.

Structured data is JSON (specs, artifacts, metrics), tabular data is CSV
(response grids, retune schedules), and sample streams are raw
little-endian float64 with ``-`` standing for stdin/stdout.  Exit codes:
0 success, 1 numerical failure, 2 input error.

Set ``VARBAND_THREADS`` to cap the BLAS/FFT thread count; it is applied
to the usual thread-count variables before numpy loads.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import warnings

_threads = os.environ.get("VARBAND_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import numpy as np  # noqa: E402  (after the thread-count handoff)

from .analysis import design_metrics, ptvir_from_coefficients, response_grid, uniform_grid
from .artifact import DesignArtifact, build_artifact
from .coefficients import build_coefficients
from .complexity import PUBLISHED_BASELINES, comparison_table, rates
from .engine import OverlapSaveEngine
from .errors import ConditioningError, FilterDesignError
from .spec import FilterSpec


class _InputError(Exception):
    """User-facing input problem; mapped to exit code 2."""


def _emit_warnings(caught):
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


# -- design ----------------------------------------------------------------


def cmd_design(args):
    try:
        with open(args.spec) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise _InputError(
            f"{args.spec}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    spec = FilterSpec.from_json_dict(doc)
    artifact = build_artifact(spec, weighted=args.weighted, phase_limit=args.phase_limit)
    if args.out:
        artifact.save(args.out)
        dest = args.out
    else:
        json.dump(artifact.to_json_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
        dest = "stdout"
    disc = artifact.disc
    agg = artifact.metrics["design_edges"]["aggregate"]
    print(
        f"designed {disc.k_transition_count} transition values, bins "
        f"{disc.b_bins_lower}..{disc.b_bins_upper} "
        f"(L={disc.filter_length}, N={disc.n_fft}, M={disc.block_advance}); "
        f"SBML {agg['sbml_db']:.1f} dB, SBE {agg['sbe_db']:.1f} dB -> {dest}",
        file=sys.stderr,
    )
    return 0


# -- analyze ---------------------------------------------------------------


def cmd_analyze(args):
    artifact = DesignArtifact.load(args.artifact)
    disc = artifact.disc
    if args.b is not None:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            bins = [disc.bandwidth_to_bin(args.b)]
        _emit_warnings(caught)
    else:
        bins = list(disc.bins())

    metrics = design_metrics(disc, artifact.transition, bins=bins, density=args.density)
    doc = {"bins": [int(b) for b in bins], "metrics": metrics}
    if args.metrics_json:
        with open(args.metrics_json, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")

    if args.grid_csv:
        omega = uniform_grid(disc.n_fft, 0.0, math.pi, args.density)
        scaled = omega / math.pi
        with open(args.grid_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["omega_over_pi", "n", "b_bin", "magnitude_db"])
            for b_bin in bins:
                coeffs = build_coefficients(disc, artifact.transition, b_bin)
                grid = response_grid(ptvir_from_coefficients(coeffs, disc), omega)
                db = 20.0 * np.log10(np.maximum(np.abs(grid.values), 1e-20))
                for n in range(db.shape[0]):
                    writer.writerows(
                        (f"{w:.8f}", n, b_bin, f"{val:.4f}")
                        for w, val in zip(scaled, db[n])
                    )
    return 0


# -- filter ----------------------------------------------------------------


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def _load_schedule(path, block_advance):
    """Parse a retune CSV into {sample_index: bandwidth in rad}."""
    schedule = {}
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if lineno == 1 and not _is_number(row[0]):
                continue  # header line
            if len(row) != 2:
                raise _InputError(
                    f"{path}:{lineno}: expected 'sample_index,b_over_pi', got {row!r}"
                )
            try:
                idx = int(row[0])
                b_over_pi = float(row[1])
            except ValueError as exc:
                raise _InputError(f"{path}:{lineno}: {exc}") from exc
            if idx < 0 or idx % block_advance:
                raise _InputError(
                    f"{path}:{lineno}: retune at sample {idx} is not on a block "
                    f"boundary (block advance {block_advance})"
                )
            schedule[idx] = b_over_pi * math.pi
    return schedule


def cmd_filter(args):
    artifact = DesignArtifact.load(args.artifact)
    disc = artifact.disc
    M = disc.block_advance

    if args.infile == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.infile, "rb") as fh:
            data = fh.read()
    if len(data) % 8:
        raise _InputError(
            f"input is {len(data)} bytes, not a whole number of float64 samples"
        )
    x = np.frombuffer(data, dtype="<f8")

    schedule = _load_schedule(args.retune, M) if args.retune else {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.b is not None:
            start_bin = disc.bandwidth_to_bin(args.b)
        else:
            start_bin = disc.b_bins_lower
    _emit_warnings(caught)

    coeffs = build_coefficients(disc, artifact.transition, start_bin)
    engine = OverlapSaveEngine(
        coeffs, mode=args.mode, disc=disc, transition=artifact.transition
    )

    n_blocks = -(-x.size // M)
    padded = np.zeros(n_blocks * M)
    padded[: x.size] = x
    out = sys.stdout.buffer if args.outfile == "-" else open(args.outfile, "wb")
    retunes = clamps = 0
    try:
        for t in range(n_blocks):
            key = t * M
            if key in schedule:
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always")
                    ack = engine.set_bandwidth(schedule[key])
                _emit_warnings(caught)
                retunes += ack.changed
                clamps += ack.clamped
            y = engine.process_block(padded[key : key + M])
            out.write(np.ascontiguousarray(y, dtype="<f8").tobytes())
    finally:
        if out is not sys.stdout.buffer:
            out.close()
    print(
        f"{x.size} samples in {n_blocks} blocks ({n_blocks * M - x.size} padded); "
        f"{retunes} retunes applied ({clamps} clamped); content delay "
        f"{disc.delay_design} samples, worst-case latency {disc.delay_system}",
        file=sys.stderr,
    )
    return 0


# -- report ----------------------------------------------------------------


def cmd_report(args):
    rows = []
    if args.baselines != "none":
        rows.extend(PUBLISHED_BASELINES[args.baselines])
    for path in args.artifacts:
        artifact = DesignArtifact.load(path)
        agg = artifact.metrics["spec_edges"]["aggregate"]
        report = rates(
            artifact.disc.n_fft,
            artifact.disc.filter_length,
            artifact.disc.k_transition_count,
        )
        label = os.path.splitext(os.path.basename(path))[0]
        rows.append(report.as_row(label, sbml_db=agg["sbml_db"], sbe_db=agg["sbe_db"]))
    print(comparison_table(rows, fmt=args.format))
    return 0


# -- entry point -----------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="varband",
        description="variable-bandwidth FIR design and streaming filtering",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="solve a spec file into a design artifact")
    p.add_argument("spec", help="filter spec JSON")
    p.add_argument("--weighted", action="store_true",
                   help="one reweighting pass flattening the worst stopband energy")
    p.add_argument("--phase-limit", choices=("M", "N"), default="M",
                   help="phase range the objective sums over (default M)")
    p.add_argument("--out", help="artifact path (default: stdout)")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("analyze", help="metrics and response grids of an artifact")
    p.add_argument("artifact")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--b", type=float, help="single bandwidth in rad")
    group.add_argument("--all", action="store_true",
                       help="every designable bin (default)")
    p.add_argument("--grid-csv", help="write omega_over_pi,n,b_bin,magnitude_db rows")
    p.add_argument("--metrics-json", help="metrics destination (default: stdout)")
    p.add_argument("--density", type=int, default=16,
                   help="grid points per pi per FFT length (default 16)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("filter", help="stream samples through an artifact's filter")
    p.add_argument("artifact")
    p.add_argument("--in", dest="infile", required=True,
                   help="raw float64 input path, or - for stdin")
    p.add_argument("--out", dest="outfile", required=True,
                   help="raw float64 output path, or - for stdout")
    p.add_argument("--retune", help="CSV schedule of sample_index,b_over_pi")
    p.add_argument("--b", type=float, help="initial bandwidth in rad")
    p.add_argument("--mode", choices=("symmetric", "conventional"),
                   default="symmetric")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("report", help="complexity and error table for artifacts")
    p.add_argument("artifacts", nargs="+")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--baselines", choices=("narrow_range", "rounded_spec", "none"),
                   default="none", help="prepend published baseline rows")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConditioningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FilterDesignError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
