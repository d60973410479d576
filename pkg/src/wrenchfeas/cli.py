"""Command-line interface.

Subcommands::

    analyze  <scene>                          classification + constraint rows
    check    <scene> --accel x,y,z [--ldot x,y,z]   motion feasibility
    shift    <scene> --delta x,y,z            shifted vs rebuilt constraint matrix
    scenario <file> [--csv path]              phase/timeline runner with timings
    bench    <scene> --reps N [--seed S] [--csv path]   timing statistics

Every command prints a JSON report to stdout.  Exit codes: 0 success or
feasible, 1 infeasible / no constraint matrix exists, 2 input error.  Scene
arguments take a file path or the name of a bundled example (``wrenchfeas
analyze two_walls``).
"""

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from .contacts import MotionQuery, Wrench, build_generating_matrices, required_wrench
from .errors import SceneFormatError
from .feasibility import classify
from .oracle import wrench_membership_lp
from .scenes import Scene, bundled_path, load_scenario, load_scene
from .wcm import (
    acceleration_feasible,
    build_wcm,
    shift_wcm,
    wrench_feasible,
    wrench_margin,
)

WARMUP_REPS = 10


def _triple(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers in {text!r}") from None


def _resolve(path_arg: str) -> Path:
    path = Path(path_arg)
    if path.exists():
        return path
    try:
        return bundled_path(path_arg)
    except FileNotFoundError:
        raise SceneFormatError(f"no such file or bundled example: {path_arg}") from None


def _emit(report: dict):
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _write_csv(path: str, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def _classification_report(scene: Scene):
    cls, t_classify = _timed(lambda: classify(scene.config, scene.com))
    wcm = None
    t_build = None
    if cls.constrained:
        wcm, t_build = _timed(
            lambda: build_wcm(scene.config, scene.com, cls.witness)
        )
    return cls, wcm, t_classify, t_build


def cmd_analyze(args) -> int:
    scene = load_scene(_resolve(args.scene))
    cls, wcm, t_classify, t_build = _classification_report(scene)
    report = {
        "command": "analyze",
        "n_contacts": len(scene.config),
        "n_generators": scene.config.n_generators,
        "verdict": "constrained" if cls.constrained else "unconstrained",
        "s_star": cls.s_star,
        "witness": (cls.witness.tolist() if cls.constrained else [0.0, 0.0, 0.0]),
        "wcm": None,
        "timing_ms": {"classify": 1e3 * t_classify},
    }
    if wcm is not None:
        report["wcm"] = {
            "anchor": wcm.anchor.tolist(),
            "row_count": wcm.n_rows,
            "rows": wcm.rows.tolist(),
        }
        report["timing_ms"]["wcm_build"] = 1e3 * t_build
    _emit(report)
    return 0


def cmd_check(args) -> int:
    scene = load_scene(_resolve(args.scene))
    query = MotionQuery(args.accel, args.ldot)
    cls, wcm, _, _ = _classification_report(scene)
    feasible = acceleration_feasible(cls, wcm, scene.body, query, scene.com)
    margin = None
    if cls.constrained:
        margin = wrench_margin(wcm, required_wrench(scene.body, query, scene.com))
    _emit(
        {
            "command": "check",
            "verdict": "feasible" if feasible else "infeasible",
            "classification": "constrained" if cls.constrained else "unconstrained",
            "accel": args.accel.tolist(),
            "l_dot": None if args.ldot is None else args.ldot.tolist(),
            "min_margin": margin,
        }
    )
    return 0 if feasible else 1


def cmd_shift(args) -> int:
    scene = load_scene(_resolve(args.scene))
    cls = classify(scene.config, scene.com)
    if not cls.constrained:
        print("no WCM exists: configuration is unconstrained", file=sys.stderr)
        return 1
    original = build_wcm(scene.config, scene.com, cls.witness)
    shifted, t_shift = _timed(lambda: shift_wcm(original, args.delta))
    target_com = scene.com + args.delta
    rebuilt, t_rebuild = _timed(
        lambda: build_wcm(scene.config, target_com, cls.witness)
    )

    rng = np.random.default_rng(args.seed)
    gen_b = build_generating_matrices(scene.config, target_com)
    stacked = gen_b.stacked()
    agree = disagree = excluded = 0
    scale_hint = 1.0
    for k in range(args.samples):
        if k % 2 == 0:
            w6 = stacked @ rng.exponential(size=stacked.shape[1])
            scale_hint = max(scale_hint, float(np.linalg.norm(w6)))
        else:
            w6 = rng.normal(size=6) * scale_hint / np.sqrt(6.0)
        wrench = Wrench(w6[:3], w6[3:], target_com)
        a = wrench_feasible(shifted, wrench)
        b = wrench_feasible(rebuilt, wrench)
        if a == b:
            agree += 1
        elif min(
            abs(wrench_margin(shifted, wrench)), abs(wrench_margin(rebuilt, wrench))
        ) <= 1e-7 * (1.0 + np.linalg.norm(w6)):
            excluded += 1
        else:
            disagree += 1

    report = {
        "command": "shift",
        "delta": args.delta.tolist(),
        "original": {"anchor": original.anchor.tolist(), "rows": original.rows.tolist()},
        "shifted": {"anchor": shifted.anchor.tolist(), "rows": shifted.rows.tolist()},
        "timing_ms": {"shift": 1e3 * t_shift, "rebuild": 1e3 * t_rebuild},
        "agreement": {
            "samples": args.samples,
            "agree": agree,
            "disagree": disagree,
            "boundary_excluded": excluded,
        },
    }
    _emit(report)
    if args.csv:
        _write_csv(
            args.csv,
            ["operation", "time_ms"],
            [["shift", 1e3 * t_shift], ["rebuild", 1e3 * t_rebuild]],
        )
    return 0


def cmd_scenario(args) -> int:
    scenario = load_scenario(_resolve(args.scenario))
    phase_rows = []
    timeline = []
    all_feasible = True
    for phase in scenario.phases:
        scene = phase.scene
        cls, t_classify = _timed(lambda: classify(scene.config, scene.com))
        wcm = None
        t_build = None
        if cls.constrained:
            wcm, t_build = _timed(
                lambda: build_wcm(scene.config, scene.com, cls.witness)
            )
        shift_times = []
        for sample in phase.samples:
            query = sample.query()
            if cls.constrained:
                moved, t_move = _timed(
                    lambda: shift_wcm(wcm, sample.com - wcm.anchor)
                )
                shift_times.append(t_move)
                wrench = required_wrench(scene.body, query, sample.com)
                margin = wrench_margin(moved, wrench)
                feasible = wrench_feasible(moved, wrench)
            else:
                # Arbitrary force: feasible outright unless the sample pins
                # the moment, which only the membership oracle can answer.
                margin = None
                if sample.l_dot is None:
                    feasible = True
                else:
                    gen_here = build_generating_matrices(
                        scene.config, sample.com
                    )
                    wrench = required_wrench(scene.body, query, sample.com)
                    feasible = wrench_membership_lp(gen_here, wrench).feasible
            all_feasible &= feasible
            timeline.append(
                {
                    "phase": phase.name,
                    "t": sample.t,
                    "com": sample.com.tolist(),
                    "feasible": bool(feasible),
                    "margin": margin,
                }
            )
        phase_rows.append(
            {
                "phase": phase.name,
                "n_contacts": len(scene.config),
                "classification": "constrained" if cls.constrained else "unconstrained",
                "classify_us": 1e6 * t_classify,
                "wcm_build_us": None if t_build is None else 1e6 * t_build,
                "mean_shift_us": (
                    None if not shift_times else 1e6 * float(np.mean(shift_times))
                ),
                "n_samples": len(phase.samples),
            }
        )
    _emit(
        {
            "command": "scenario",
            "phases": phase_rows,
            "timeline": timeline,
            "all_feasible": all_feasible,
        }
    )
    if args.csv:
        header = [
            "phase",
            "t",
            "feasible",
            "margin",
            "classify_us",
            "wcm_build_us",
            "mean_shift_us",
        ]
        by_name = {row["phase"]: row for row in phase_rows}
        rows = [
            [
                entry["phase"],
                entry["t"],
                int(entry["feasible"]),
                "" if entry["margin"] is None else entry["margin"],
                by_name[entry["phase"]]["classify_us"],
                by_name[entry["phase"]]["wcm_build_us"] or "",
                by_name[entry["phase"]]["mean_shift_us"] or "",
            ]
            for entry in timeline
        ]
        _write_csv(args.csv, header, rows)
    return 0 if all_feasible else 1


def cmd_bench(args) -> int:
    scene = load_scene(_resolve(args.scene))
    rng = np.random.default_rng(args.seed)
    cls = classify(scene.config, scene.com)

    timings = {"classify": []}
    if cls.constrained:
        timings["build_wcm"] = []
        timings["shift_wcm"] = []
        wcm = build_wcm(scene.config, scene.com, cls.witness)
    total = args.reps + WARMUP_REPS
    for i in range(total):
        measured = i >= WARMUP_REPS
        _, t = _timed(lambda: classify(scene.config, scene.com))
        if measured:
            timings["classify"].append(t)
        if cls.constrained:
            _, t = _timed(lambda: build_wcm(scene.config, scene.com, cls.witness))
            if measured:
                timings["build_wcm"].append(t)
            delta = rng.uniform(-0.1, 0.1, size=3)
            _, t = _timed(lambda: shift_wcm(wcm, delta))
            if measured:
                timings["shift_wcm"].append(t)

    stats = {}
    for op, values in timings.items():
        arr = 1e3 * np.asarray(values)
        stats[op] = {
            "median_ms": float(np.median(arr)),
            "mean_ms": float(np.mean(arr)),
            "p95_ms": float(np.percentile(arr, 95)),
        }
    _emit(
        {
            "command": "bench",
            "n_contacts": len(scene.config),
            "classification": "constrained" if cls.constrained else "unconstrained",
            "reps": args.reps,
            "stats": stats,
        }
    )
    if args.csv:
        _write_csv(
            args.csv,
            ["operation", "median_ms", "mean_ms", "p95_ms"],
            [
                [op, s["median_ms"], s["mean_ms"], s["p95_ms"]]
                for op, s in stats.items()
            ],
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wrenchfeas",
        description="Wrench feasibility analysis for frictional multi-contact scenes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a scene, print the constraint rows")
    p.add_argument("scene")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="is a CoM motion feasible for a scene?")
    p.add_argument("scene")
    p.add_argument("--accel", type=_triple, required=True, metavar="x,y,z")
    p.add_argument("--ldot", type=_triple, default=None, metavar="x,y,z")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("shift", help="re-anchor the constraint matrix and compare")
    p.add_argument("scene")
    p.add_argument("--delta", type=_triple, required=True, metavar="x,y,z")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("scenario", help="run a phased scenario with timings")
    p.add_argument("scenario")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("bench", help="timing statistics for one scene")
    p.add_argument("scene")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (SceneFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
