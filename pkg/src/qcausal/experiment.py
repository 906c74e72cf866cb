"""Monte-Carlo experiment harness: batteries of random scenarios run through
the discriminator, with deterministic seeding, CSV rows and a JSON summary.

Determinism contract: identical config (including seed) produces byte-identical
CSV output, regardless of the worker count — every scenario derives its own
generator and measurement streams from the root seed by spawn keys, and rows
are emitted in scenario order, not completion order.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import multiprocessing
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, kernels, sampling
from .scheme import BlackBoxSystem, DiscriminationConfig, VerdictKind, discriminate

_KIND_CODES = {"common": 0, "causal": 1}
_EXPECTED = {"common": VerdictKind.COMMON_CAUSE, "causal": VerdictKind.CAUSALITY}

#: Exact statistics leave no shot noise; equality checks run at theorem level.
EXACT_MODE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ExperimentConfig:
    """Configuration of one experiment battery (echoed into every report)."""

    n_common: int = 10_000
    n_causal: int = 10_000
    shots_per_axis: int = 200
    tolerance: float | None = None  # None: 0.1 sampled, 1e-9 exact
    gap: float = math.pi / 4.0
    seed: int = 0
    mode: str = "sampled"  # "sampled" | "exact"
    repeats: int = 5
    shots_reading: str = "per-axis"  # "per-axis" | "total"

    def __post_init__(self):
        if self.n_common < 1 or self.n_causal < 1:
            raise ValueError("scenario counts must be >= 1")
        if self.shots_per_axis < 1:
            raise ValueError("shots_per_axis must be >= 1")
        if self.mode not in ("sampled", "exact"):
            raise ValueError(f"mode must be 'sampled' or 'exact', got {self.mode!r}")
        if self.shots_reading not in ("per-axis", "total"):
            raise ValueError(f"shots_reading must be 'per-axis' or 'total', got {self.shots_reading!r}")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.tolerance is not None and not (0.0 < self.tolerance < 1.0):
            raise ValueError(f"tolerance must be in (0, 1), got {self.tolerance!r}")
        if not (0.0 < self.gap < math.pi / 2.0):
            raise ValueError(f"gap must be in (0, pi/2), got {self.gap!r}")

    @property
    def resolved_tolerance(self) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return EXACT_MODE_TOLERANCE if self.mode == "exact" else 0.1

    @property
    def effective_shots(self) -> int | None:
        """Shots per axis after the reading convention; None in exact mode."""
        if self.mode == "exact":
            return None
        if self.shots_reading == "per-axis":
            return self.shots_per_axis
        return max(1, self.shots_per_axis // 3)

    def discrimination_config(self) -> DiscriminationConfig:
        return DiscriminationConfig(
            shots=self.effective_shots, tol=self.resolved_tolerance, gap=self.gap
        )

    def fingerprint(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True) + f"|qcausal {__version__}"
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ScenarioRow:
    """One discrimination run of the battery."""

    repeat: int
    scenario_id: int
    kind: str
    verdict: str
    correct: bool
    branch: str
    shots: int
    estimates: tuple[tuple[float, float, float], ...]


@dataclass
class ExperimentReport:
    """Battery results: per-scenario rows plus recomputable aggregates."""

    config: ExperimentConfig
    rows: list[ScenarioRow]
    per_repeat_failures: list[int] = field(default_factory=list)

    def __post_init__(self):
        failures = [0] * self.config.repeats
        for row in self.rows:
            if not row.correct:
                failures[row.repeat] += 1
        self.per_repeat_failures = failures

    @property
    def scenarios_per_repeat(self) -> int:
        return self.config.n_common + self.config.n_causal

    @property
    def failure_count_mean(self) -> float:
        return float(np.mean(self.per_repeat_failures))

    @property
    def failure_count_std(self) -> float:
        return float(np.std(self.per_repeat_failures, ddof=1)) if self.config.repeats > 1 else 0.0

    @property
    def failure_rate(self) -> float:
        return self.failure_count_mean / self.scenarios_per_repeat

    @property
    def ci_half_width(self) -> float:
        """95% half-width of the mean failure rate."""
        if self.config.repeats > 1:
            return 1.96 * self.failure_count_std / math.sqrt(self.config.repeats) / self.scenarios_per_repeat
        total = self.scenarios_per_repeat
        p = self.failure_rate
        return 1.96 * math.sqrt(max(p * (1.0 - p), 0.0) / total)

    def summary(self) -> dict:
        return {
            "config": asdict(self.config),
            "resolved_tolerance": self.config.resolved_tolerance,
            "effective_shots": self.config.effective_shots,
            "fingerprint": self.config.fingerprint(),
            "backend": kernels.backend(),
            "sampling_law": sampling.SAMPLING_LAW,
            "scenarios_per_repeat": self.scenarios_per_repeat,
            "per_repeat_failures": self.per_repeat_failures,
            "failure_count_mean": self.failure_count_mean,
            "failure_count_std": self.failure_count_std,
            "failure_rate": self.failure_rate,
            "ci_half_width": self.ci_half_width,
        }


def _format_estimates(estimates) -> str:
    return "|".join(":".join(f"{x:.17g}" for x in triple) for triple in estimates)


def _run_single(cfg: ExperimentConfig, repeat: int, kind: str, index: int) -> ScenarioRow:
    gen_rng, measure_rng = sampling.scenario_rngs(cfg.seed, repeat, _KIND_CODES[kind], index)
    scenario = sampling.random_scenario(kind, gen_rng)
    box = BlackBoxSystem(scenario, rng=None if cfg.mode == "exact" else measure_rng)
    verdict = discriminate(box, cfg.discrimination_config())
    return ScenarioRow(
        repeat=repeat,
        scenario_id=index,
        kind=kind,
        verdict=verdict.kind.value,
        correct=verdict.kind is _EXPECTED[kind],
        branch=verdict.branch_signature(),
        shots=0 if cfg.effective_shots is None else cfg.effective_shots,
        estimates=tuple((p.c11, p.c22, p.c33) for p in verdict.estimates()),
    )


_WORKER_CFG: ExperimentConfig | None = None


def _init_worker(cfg: ExperimentConfig) -> None:
    global _WORKER_CFG
    _WORKER_CFG = cfg


def _worker_task(task: tuple[int, str, int]) -> ScenarioRow:
    repeat, kind, index = task
    assert _WORKER_CFG is not None
    return _run_single(_WORKER_CFG, repeat, kind, index)


def _tasks(cfg: ExperimentConfig):
    for repeat in range(cfg.repeats):
        for kind, count in (("common", cfg.n_common), ("causal", cfg.n_causal)):
            for index in range(count):
                yield repeat, kind, index


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> ExperimentReport:
    """Run the battery; ``workers`` only affects wall time, never the results."""
    tasks = list(_tasks(cfg))
    if workers <= 1:
        rows = [_run_single(cfg, *task) for task in tasks]
    else:
        with multiprocessing.Pool(workers, initializer=_init_worker, initargs=(cfg,)) as pool:
            rows = list(pool.imap(_worker_task, tasks, chunksize=64))
    return ExperimentReport(config=cfg, rows=rows)


CSV_HEADER = (
    "repeat,scenario_id,kind,verdict,correct,branch,shots,n_estimates,p_estimates"
)


def write_csv(report: ExperimentReport, path: Path) -> None:
    """Rows in deterministic order and formatting (UTF-8, LF endings)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for row in report.rows:
            writer.writerow(
                [
                    row.repeat,
                    row.scenario_id,
                    row.kind,
                    row.verdict,
                    int(row.correct),
                    row.branch,
                    row.shots,
                    len(row.estimates),
                    _format_estimates(row.estimates),
                ]
            )


def write_json(report: ExperimentReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report.summary(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_and_write(
    cfg: ExperimentConfig, out_dir: Path, workers: int = 1, prefix: str = "experiment"
) -> tuple[ExperimentReport, Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = run_experiment(cfg, workers=workers)
    csv_path = out_dir / f"{prefix}.csv"
    json_path = out_dir / f"{prefix}.json"
    write_csv(report, csv_path)
    write_json(report, json_path)
    return report, csv_path, json_path
