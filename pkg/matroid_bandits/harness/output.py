"""
Run outputs: the trace CSV, the reproducibility manifest and the summary.

Every run directory holds traces.csv, manifest.yaml and summary.json.
"""

import csv
import json
import platform
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import structlog

from .metrics import compute_gap_dependent_bound, compute_gap_free_bound, compute_gap_profile
from .simulator import EpisodeTrace, RunResult, aggregate
from ..core.config import dump_document

logger = structlog.get_logger(__name__)

CSV_HEADER = (
    "episode",
    "policy",
    "replication",
    "realized_return",
    "expected_return",
    "pseudo_regret_cum",
    "realized_regret_cum",
    "per_step_return",
)
TRACES_FILE = "traces.csv"
MANIFEST_FILE = "manifest.yaml"
SUMMARY_FILE = "summary.json"


def format_float(x: float) -> str:
    """12 significant digits."""
    return format(float(x), ".12g")


def trace_row(trace: EpisodeTrace) -> List[str]:
    return [
        str(trace.episode),
        trace.policy,
        str(trace.replication),
        format_float(trace.realized_return),
        format_float(trace.expected_return),
        format_float(trace.pseudo_regret_cum),
        format_float(trace.realized_regret_cum),
        format_float(trace.per_step_return),
    ]


def write_traces_csv(path: Path, traces: Iterable[EpisodeTrace]) -> int:
    """Write traces in the given order; returns the number of data rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for trace in traces:
            writer.writerow(trace_row(trace))
            rows += 1
    return rows


@dataclass
class RunManifest:
    """Enough to reproduce a run: its config, seeds and the frozen instance."""

    version: str
    config: Dict[str, Any]
    seeds: Dict[int, int]
    matroid: Dict[str, Any]
    environment: Dict[str, Any]
    w_bar: List[float]
    optimal_basis: List[int]
    duration_seconds: float
    created_at: str = ""
    python: str = field(default_factory=platform.python_version)

    @classmethod
    def from_run(cls, run: RunResult) -> "RunManifest":
        from .. import __version__

        cfg = run.config
        return cls(
            version=__version__,
            config=cfg.to_dict(),
            seeds={r: cfg.replication_seed(r) for r in range(cfg.replications)},
            matroid=run.instance.matroid.to_dict(),
            environment=run.instance.environment.to_dict(),
            w_bar=[float(x) for x in run.w_bar],
            optimal_basis=list(run.optimal_basis),
            duration_seconds=round(run.duration_seconds, 6),
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    def replay_config(self) -> Dict[str, Any]:
        """The config with the resolved instance inlined, so no file or generator is needed."""
        config = dict(self.config)
        config["matroid"] = dict(self.matroid)
        config["environment"] = dict(self.environment)
        return config

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["replay"] = self.replay_config()
        return data


def write_manifest(path: Path, manifest: RunManifest) -> None:
    dump_document(manifest.to_dict(), path)


def build_summary(run: RunResult) -> Dict[str, Any]:
    """Aggregated curves plus the bound envelopes at the horizon."""
    cfg = run.config
    matroid = run.instance.matroid
    profile = compute_gap_profile(matroid, run.w_bar)
    n = cfg.horizon
    bounds: Dict[str, Optional[float]] = {
        "gap_dependent": compute_gap_dependent_bound(profile, n),
        "gap_free": compute_gap_free_bound(matroid.ground_set_size, profile.rank, n) if n >= 2 else None,
    }
    if run.instance.lower_bound:
        bounds["lower_bound_slope"] = run.instance.lower_bound["slope"]
        bounds["lower_bound"] = run.instance.lower_bound["slope"] * float(np.log(n))
    curves = aggregate(run.results)
    return {
        "name": cfg.name,
        "horizon": n,
        "replications": cfg.replications,
        "L": matroid.ground_set_size,
        "K": profile.rank,
        "optimal_return": float(run.w_bar[list(run.optimal_basis)].sum()),
        "gap_profile": profile.to_dict(),
        "bounds": bounds,
        "invariant_failures": run.invariant_failures,
        "policies": {label: curve.to_dict() for label, curve in curves.items()},
    }


def write_summary(path: Path, summary: Dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2)
        f.write("\n")


def write_run_outputs(run: RunResult, output_dir: Path) -> Dict[str, Path]:
    """Write all three files of a run, serialized from this one place."""
    output_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "traces": output_dir / TRACES_FILE,
        "manifest": output_dir / MANIFEST_FILE,
        "summary": output_dir / SUMMARY_FILE,
    }
    rows = write_traces_csv(paths["traces"], run.traces)
    write_manifest(paths["manifest"], RunManifest.from_run(run))
    write_summary(paths["summary"], build_summary(run))
    logger.info("Outputs written", directory=str(output_dir), rows=rows)
    return paths
