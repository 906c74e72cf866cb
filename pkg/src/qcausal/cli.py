"""Command-line entry points.

Subcommands: ``simulate`` (one discrimination run with a printed trace),
``experiment`` (Monte-Carlo batteries with CSV/JSON reports), ``verify``
(claim certification against the brute-force oracle), ``design-v`` (inspect
the designed frame rotations for a statistic or mixture).

Exit codes: 0 success, 1 usage or input error, 2 claim failure.
The default seed comes from ``QCAUSAL_SEED`` when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import experiment as exp
from . import geom, sampling
from .oracle import claims
from .qcore import bell_ket, mixed_state
from .scheme import BlackBoxSystem, DiscriminationConfig, design_for_classes, discriminate
from .stats import CommonCause, StatP


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise _UsageError(message)


def _default_seed() -> int:
    return int(os.environ.get("QCAUSAL_SEED", "0"))


def _parse_floats(text: str, n: int, what: str) -> np.ndarray:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != n:
        raise _UsageError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as err:
        raise _UsageError(f"{what}: {err}") from err


def _statp_str(p: StatP) -> str:
    return f"({p.c11:+.6f}, {p.c22:+.6f}, {p.c33:+.6f})"


def _fixture_corner_mix() -> CommonCause:
    b1, b2 = bell_ket(1), bell_ket(2)
    return CommonCause(
        mixed_state(
            [(0.5, np.outer(b1, b1.conj())), (0.5, np.outer(b2, b2.conj()))]
        )
    )


def _cmd_simulate(args) -> int:
    gen_rng, measure_rng = sampling.scenario_rngs(args.seed, 0, 0 if args.kind == "common" else 1, 0)
    if args.state == "corner-mix":
        if args.kind != "common":
            raise _UsageError("--state corner-mix requires --kind common")
        scenario = _fixture_corner_mix()
    elif args.p is not None:
        if args.kind != "causal":
            raise _UsageError("--p requires --kind causal")
        p = _parse_floats(args.p, 4, "--p")
        if p.min() < 0 or p.sum() <= 0:
            raise _UsageError("--p entries must be nonnegative with a positive sum")
        mixture = geom.PauliMixture(p / p.sum())
        candidates = geom.candidate_unitaries_from_mixture(mixture)
        from .qcore import realize_canonical
        from .stats import DirectCause

        scenario = DirectCause(realize_canonical(candidates.class_reps[0]))
    else:
        scenario = sampling.random_scenario(args.kind, gen_rng)

    exact = args.mode == "exact"
    cfg = DiscriminationConfig(
        shots=None if exact else args.shots,
        tol=args.tol if args.tol is not None else (1e-9 if exact else 0.1),
        gap=args.gap,
    )
    box = BlackBoxSystem(scenario, rng=None if exact else measure_rng)
    verdict = discriminate(box, cfg)

    print(f"scenario: {args.kind} ({args.state if args.state else 'random'})")
    print(f"mode: {args.mode}, shots/axis: {cfg.shots or 'exact'}, tol: {cfg.tol}, gap: {cfg.gap:.4f}")
    for step in verdict.trace:
        line = f"  [{step.node}] {step.note}"
        if step.statp is not None:
            line += f"  P = {_statp_str(step.statp)}"
        print(line)
    print(f"verdict: {verdict.kind.value}")
    expected = "COMMON_CAUSE" if args.kind == "common" else "CAUSALITY"
    print(f"correct: {verdict.kind.value == expected}")
    return 0


def _load_experiment_config(args) -> exp.ExperimentConfig:
    values: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            values.update(json.load(fh))
    overrides = {
        "n_common": args.n_common,
        "n_causal": args.n_causal,
        "shots_per_axis": args.shots,
        "tolerance": args.tolerance,
        "gap": args.gap,
        "seed": args.seed,
        "mode": args.mode,
        "repeats": args.repeats,
        "shots_reading": args.shots_reading,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return exp.ExperimentConfig(**values)
    except (TypeError, ValueError) as err:
        raise _UsageError(f"bad experiment config: {err}") from err


def _cmd_experiment(args) -> int:
    cfg = _load_experiment_config(args)
    try:
        report, csv_path, json_path = exp.run_and_write(
            cfg, Path(args.out), workers=args.workers, prefix=args.prefix
        )
    except OSError as err:
        print(f"error: cannot write reports to {args.out!r}: {err}", file=sys.stderr)
        return 1
    summary = report.summary()
    print(f"backend: {summary['backend']}")
    print(f"scenarios/repeat: {summary['scenarios_per_repeat']}  repeats: {cfg.repeats}")
    print(f"per-repeat failures: {summary['per_repeat_failures']}")
    print(
        f"failure rate: {100 * summary['failure_rate']:.3f}%"
        f" (+- {100 * summary['ci_half_width']:.3f}%)"
    )
    print(f"rows: {csv_path}")
    print(f"summary: {json_path}")
    return 0


def _cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    ids = args.claims
    if not ids or ids == ["all"]:
        ids = list(claims.claim_ids())
    reports = []
    for cid in ids:
        try:
            reports.append(claims.verify_claim(cid, args.samples, rng))
        except KeyError as err:
            print(f"error: {err.args[0]}", file=sys.stderr)
            return 1
    for report in reports:
        print(report.to_text())
    failed = [r.claim_id for r in reports if not r.passed]
    if failed:
        print(f"FAILED claims: {', '.join(failed)}", file=sys.stderr)
        return 2
    print(f"all {len(reports)} claims passed")
    return 0


def _cmd_design_v(args) -> int:
    if (args.statp is None) == (args.mixture is None):
        raise _UsageError("give exactly one of --statp or --mixture")
    tol = args.tol
    if args.statp is not None:
        p = StatP.from_array(_parse_floats(args.statp, 3, "--statp"))
        try:
            candidates = geom.candidate_unitaries(p, tol)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 1
    else:
        mix = _parse_floats(args.mixture, 4, "--mixture")
        if mix.min() < 0:
            raise _UsageError("--mixture entries must be nonnegative")
        candidates = geom.candidate_unitaries_from_mixture(geom.PauliMixture(mix / mix.sum()))
    designs = design_for_classes(candidates, args.gap)
    print(f"mixture: {np.array2string(candidates.mixture.p, precision=6)}")
    print(f"{'k':>2} {'psi':>12} {'chi':>12} {'phi':>12} {'r':>12} {'omega':>12}   target")
    for d in designs:
        rot = d.rotation
        print(
            f"{d.class_index:>2} {rot.psi:>12.6f} {rot.chi:>12.6f} {rot.phi:>12.6f}"
            f" {d.r:>12.6f} {d.omega:>12.6f}   {_statp_str(d.target)}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcausal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the discriminator once and print the trace")
    sim.add_argument("--kind", choices=("common", "causal"), required=True)
    sim.add_argument("--mode", choices=("exact", "sampled"), default="sampled")
    sim.add_argument("--seed", type=int, default=_default_seed())
    sim.add_argument("--shots", type=int, default=200, help="shots per axis (sampled mode)")
    sim.add_argument("--tol", type=float, default=None, help="flowchart tolerance (default 0.1 sampled / 1e-9 exact)")
    sim.add_argument("--gap", type=float, default=math.pi / 4)
    sim.add_argument("--state", choices=("random", "corner-mix"), default="random",
                     help="corner-mix: the ambiguous half/half Bell mixture fixture")
    sim.add_argument("--p", default=None, help="causal only: Pauli mixture 'p0,p1,p2,p3'")
    sim.set_defaults(func=_cmd_simulate)

    ex = sub.add_parser("experiment", help="run a Monte-Carlo battery and write reports")
    ex.add_argument("--config", default=None, help="JSON file mirroring ExperimentConfig")
    ex.add_argument("--n-common", type=int, default=None)
    ex.add_argument("--n-causal", type=int, default=None)
    ex.add_argument("--shots", type=int, default=None, help="shots per measurement")
    ex.add_argument("--tolerance", type=float, default=None)
    ex.add_argument("--gap", type=float, default=None)
    ex.add_argument("--seed", type=int, default=None)
    ex.add_argument("--mode", choices=("sampled", "exact"), default=None)
    ex.add_argument("--repeats", type=int, default=None)
    ex.add_argument("--shots-reading", choices=("per-axis", "total"), default=None)
    ex.add_argument("--out", default="reports", help="output directory")
    ex.add_argument("--prefix", default="experiment")
    ex.add_argument("--workers", type=int, default=1)
    ex.set_defaults(func=_cmd_experiment)

    ver = sub.add_parser("verify", help="check registered claims against the oracle")
    ver.add_argument("claims", nargs="*", help="claim ids, or 'all' (default)")
    ver.add_argument("--samples", type=int, default=None, help="override per-claim sample count")
    ver.add_argument("--seed", type=int, default=_default_seed())
    ver.set_defaults(func=_cmd_verify)

    des = sub.add_parser("design-v", help="print the designed rotations for a statistic")
    des.add_argument("--statp", default=None, help="statistic 'c11,c22,c33'")
    des.add_argument("--mixture", default=None, help="Pauli mixture 'p0,p1,p2,p3'")
    des.add_argument("--gap", type=float, default=math.pi / 4)
    des.add_argument("--tol", type=float, default=1e-9, help="clamp tolerance for --statp")
    des.set_defaults(func=_cmd_design_v)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
