"""Experiment runner: generate elections, determine optimal coalitions, tabulate.

Per-instance results go to a CSV with a fixed schema; summaries group them by
model and candidate count, one row per m, as in the published tables.
"""

from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .election import ValidationError, tally
from .exact import Budget, OptimalityReport, minimum_manipulators
from .formats import FormatError
from .gen import cell_seed, choose_target, instance_key, uniform_election, urn_election

log = logging.getLogger(__name__)

CSV_FIELDS = (
    "instance_id", "m", "p", "model", "n_reverse", "n_optimal", "proof",
    "rev_opt", "lslg_opt", "lsla_opt", "nodes", "elapsed_ms",
)
DESK_M = (4, 8, 16)
DESK_P = (4, 8, 16, 32, 64, 128)
FULL_GRID = (4, 8, 16, 32, 64, 128)


@dataclass(frozen=True)
class ExperimentConfig:
    m_values: tuple[int, ...] = DESK_M
    p_values: tuple[int, ...] = DESK_P
    instances: int = 100
    models: tuple[str, ...] = ("uniform",)
    seed: int = 0
    target: str = "last"
    urn_a: Optional[int] = None
    budget: Budget = Budget()
    workers: int = 1
    record_times: bool = False

    def __post_init__(self):
        if not self.m_values or any(m < 2 for m in self.m_values):
            raise ValidationError(f"m values must be >= 2: {self.m_values}")
        if not self.p_values or any(p < 1 for p in self.p_values):
            raise ValidationError(f"p values must be >= 1: {self.p_values}")
        if self.instances < 1:
            raise ValidationError("instances per cell must be >= 1")
        for model in self.models:
            if model not in ("uniform", "urn"):
                raise ValidationError(f"experiments support uniform/urn, not {model!r}")
        if self.target not in ("last", "worst"):
            raise ValidationError(f"unknown targeting policy {self.target!r}")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")


@dataclass
class InstanceResult:
    instance_id: str
    m: int
    p: int
    model: str
    report: OptimalityReport

    def row(self, record_times: bool = False) -> dict:
        r = self.report

        def flag(v):
            return "" if v is None else int(v)

        return {
            "instance_id": self.instance_id,
            "m": self.m,
            "p": self.p,
            "model": self.model,
            "n_reverse": r.n_reverse,
            "n_optimal": "" if r.n_optimal is None else r.n_optimal,
            "proof": r.proof.value,
            "rev_opt": flag(r.rev_opt),
            "lslg_opt": flag(r.lslg_opt),
            "lsla_opt": flag(r.lsla_opt),
            "nodes": r.nodes,
            "elapsed_ms": f"{r.elapsed_ms:.3f}" if record_times else "",
        }


@dataclass
class SummaryRow:
    m: int
    instances: int = 0
    reverse: int = 0
    lslg: int = 0
    lsla: int = 0
    lslg_beat_lsla: int = 0
    unknown: int = 0
    dominance_flags: int = 0

    def add(self, row: dict) -> None:
        if row["n_optimal"] in ("", None):
            self.unknown += 1
            return
        self.instances += 1
        rev, g, a = (_as_bool(row[k]) for k in ("rev_opt", "lslg_opt", "lsla_opt"))
        self.reverse += rev
        self.lslg += g
        self.lsla += a
        self.lslg_beat_lsla += g and not a
        self.dominance_flags += rev and not a


@dataclass
class SummaryTable:
    model: str
    rows: list[SummaryRow] = field(default_factory=list)

    @property
    def total(self) -> SummaryRow:
        t = SummaryRow(m=0)
        for r in self.rows:
            for name in ("instances", "reverse", "lslg", "lsla", "lslg_beat_lsla",
                         "unknown", "dominance_flags"):
                setattr(t, name, getattr(t, name) + getattr(r, name))
        return t

    def rate(self, column: str, ms: Optional[Iterable[int]] = None) -> float:
        rows = self.rows if ms is None else [r for r in self.rows if r.m in set(ms)]
        inst = sum(r.instances for r in rows)
        return sum(getattr(r, column) for r in rows) / inst if inst else float("nan")


def _as_bool(v) -> bool:
    if v in (1, "1", True):
        return True
    if v in (0, "0", False):
        return False
    raise FormatError(f"expected a 0/1 flag, got {v!r}")


def _solve(job) -> InstanceResult:
    instance_id, m, p, model, profile, budget = job
    return InstanceResult(instance_id, m, p, model, minimum_manipulators(profile, budget))


def generate_jobs(cfg: ExperimentConfig):
    """Deduplicated (id, m, p, model, profile, budget) jobs plus duplicate counts."""
    jobs = []
    duplicates: dict[tuple[str, int], int] = {}
    for model in cfg.models:
        seen: set[str] = set()
        for m in cfg.m_values:
            for p in cfg.p_values:
                base = cell_seed(cfg.seed, model, m, p)
                for idx in range(cfg.instances):
                    if model == "uniform":
                        e = uniform_election(m, p, base + idx)
                    else:
                        e = urn_election(m, p, cfg.urn_a, base + idx)
                    key = instance_key(e)
                    if key in seen:
                        duplicates[model, m] = duplicates.get((model, m), 0) + 1
                        continue
                    seen.add(key)
                    profile = tally(choose_target(e, cfg.target))
                    iid = f"{model}_m{m}_p{p}_{idx:04d}"
                    jobs.append((iid, m, p, model, profile, cfg.budget))
    return jobs, duplicates


def run_experiment(cfg: ExperimentConfig, progress=None) -> tuple[list[InstanceResult], dict]:
    jobs, duplicates = generate_jobs(cfg)
    log.info("%d distinct instances (%d duplicates dropped)", len(jobs), sum(duplicates.values()))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            # map() yields in submission order, independent of scheduling
            results = list(pool.map(_solve, jobs, chunksize=8))
    else:
        results = []
        for i, job in enumerate(jobs):
            results.append(_solve(job))
            if progress:
                progress(i + 1, len(jobs))
    for r in results:
        if r.report.dominance_violation:
            log.warning(
                "DOMINANCE VIOLATION: %s - REVERSE found %d but LSLA failed at %d and %d",
                r.instance_id, r.report.n_reverse, r.report.n_reverse, r.report.n_reverse - 1,
            )
    return results, duplicates


def header_line(cfg: ExperimentConfig) -> str:
    return (
        f"# root_seed={cfg.seed} models={'/'.join(cfg.models)} target={cfg.target} "
        f"m={'/'.join(map(str, cfg.m_values))} p={'/'.join(map(str, cfg.p_values))} "
        f"instances={cfg.instances} urn_a={'m!' if cfg.urn_a is None else cfg.urn_a} "
        f"budget_nodes={cfg.budget.max_nodes} budget_ms={cfg.budget.max_ms}"
    )


def results_csv(results: Sequence[InstanceResult], cfg: ExperimentConfig) -> str:
    buf = io.StringIO()
    buf.write(header_line(cfg) + "\n")
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in results:
        w.writerow(r.row(cfg.record_times))
    return buf.getvalue()


def timings_csv(results: Sequence[InstanceResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance_id", "elapsed_ms"])
    for r in results:
        w.writerow([r.instance_id, f"{r.report.elapsed_ms:.3f}"])
    return buf.getvalue()


def read_rows(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        return []
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise FormatError(
            f"unexpected CSV columns {reader.fieldnames}; expected {list(CSV_FIELDS)}"
        )
    rows = []
    for i, row in enumerate(reader, start=2):
        try:
            row["m"] = int(row["m"])
            for k in ("rev_opt", "lslg_opt", "lsla_opt"):
                if row["n_optimal"] != "":
                    _as_bool(row[k])
        except (ValueError, FormatError) as exc:
            raise FormatError(f"bad CSV row {i}: {exc}") from exc
        rows.append(row)
    return rows


def summarize(rows: Iterable[dict]) -> list[SummaryTable]:
    tables: dict[str, dict[int, SummaryRow]] = {}
    for row in rows:
        by_m = tables.setdefault(row["model"], {})
        m = int(row["m"])
        by_m.setdefault(m, SummaryRow(m)).add(row)
    return [
        SummaryTable(model, [by_m[m] for m in sorted(by_m)])
        for model, by_m in tables.items()
    ]


def _pct(num: int, den: int) -> str:
    return f"{100 * num / den:.1f}" if den else "-"


def render_text(tables: Sequence[SummaryTable]) -> str:
    head = ("m", "# Inst.", "REVERSE", "LSLG", "LSLA", "LSLG beat LSLA", "Unknown")
    out = []
    for t in tables:
        body = [[str(r.m), str(r.instances), str(r.reverse), str(r.lslg), str(r.lsla),
                 str(r.lslg_beat_lsla), str(r.unknown)] for r in t.rows]
        tot = t.total
        body.append(["Total", str(tot.instances), str(tot.reverse), str(tot.lslg),
                     str(tot.lsla), str(tot.lslg_beat_lsla), str(tot.unknown)])
        body.append(["%", "", _pct(tot.reverse, tot.instances), _pct(tot.lslg, tot.instances),
                     _pct(tot.lsla, tot.instances), _pct(tot.lslg_beat_lsla, tot.instances), ""])
        widths = [max(len(head[c]), *(len(b[c]) for b in body)) for c in range(len(head))]
        fmt = "  ".join("{:>%d}" % w for w in widths)
        out.append(f"model: {t.model}")
        out.append(fmt.format(*head))
        out.append("-" * len(fmt.format(*head)))
        for b in body[:-2]:
            out.append(fmt.format(*b))
        out.append("-" * len(fmt.format(*head)))
        out.extend(fmt.format(*b) for b in body[-2:])
        if tot.dominance_flags:
            out.append(f"!! {tot.dominance_flags} instances where REVERSE was optimal but LSLA was not")
        out.append("")
    return "\n".join(out)


def render_csv(tables: Sequence[SummaryTable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "m", "instances", "reverse", "lslg", "lsla", "lslg_beat_lsla", "unknown"])
    for t in tables:
        for r in t.rows + [t.total]:
            w.writerow([t.model, r.m or "total", r.instances, r.reverse, r.lslg, r.lsla,
                        r.lslg_beat_lsla, r.unknown])
    return buf.getvalue()


def write_outputs(out_dir: Path, cfg: ExperimentConfig, results, duplicates) -> dict[str, Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "instances": out_dir / "instances.csv",
        "timings": out_dir / "timings.csv",
        "summary": out_dir / "summary.txt",
        "summary_csv": out_dir / "summary.csv",
    }
    paths["instances"].write_text(results_csv(results, cfg))
    paths["timings"].write_text(timings_csv(results))
    tables = summarize(r.row() for r in results)
    dup = "".join(
        f"duplicates dropped: {model} m={m}: {c}\n" for (model, m), c in sorted(duplicates.items())
    )
    paths["summary"].write_text(header_line(cfg) + "\n" + render_text(tables) + dup)
    paths["summary_csv"].write_text(render_csv(tables))
    return paths


def timed_run(cfg: ExperimentConfig) -> tuple[list[InstanceResult], dict, float]:
    t0 = time.monotonic()
    results, dup = run_experiment(cfg)
    return results, dup, time.monotonic() - t0
