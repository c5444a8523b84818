"""Batch orchestration and report emission."""

from __future__ import annotations

import csv
import io
import json
import logging
import statistics
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from .config import SuiteConfig
from .suites import run_task, tasks_for

log = logging.getLogger(__name__)

CSV_COLUMNS = ("kind", "group", "seed", "lhs", "rhs", "pass")


@dataclass
class RunReport:
    config: SuiteConfig
    records: list[dict] = field(default_factory=list)

    @property
    def theorem_failures(self) -> list[dict]:
        return [r for r in self.records if r["theorem"] and not r["pass"]]

    @property
    def exit_code(self) -> int:
        return 1 if self.theorem_failures else 0

    def counts(self) -> dict:
        """Pass/fail counts per suite and kind."""
        out: dict = defaultdict(lambda: {"pass": 0, "fail": 0})
        for r in self.records:
            key = f"{r['suite']}/{r['kind']}"
            out[key]["pass" if r["pass"] else "fail"] += 1
        return dict(sorted(out.items()))

    def statistics(self) -> dict:
        exps = [r["extra"]["exponent"] for r in self.records if r["kind"] == "growth_disjunction" and r["extra"].get("exponent")]
        branches = Counter(r["extra"]["branch"] for r in self.records if r["kind"] == "growth_disjunction")
        ratios = [r["extra"]["a_ratio"] for r in self.records if r["kind"] == "covering"]
        cert = [
            r["extra"]["N"] / r["extra"]["log_ratio"] for r in self.records if r["kind"] == "decomposition_length"
        ]
        frontiers = {r["group"]: r["extra"] for r in self.records if r["kind"] == "normal_frontier"}

        def summary(xs):
            return {"count": len(xs), "min": min(xs), "median": statistics.median(xs), "max": max(xs)} if xs else None

        return {
            "growth_exponent": summary(exps),
            "disjunction_branches": dict(sorted(branches.items())),
            "covering_a_ratio": summary(ratios),
            "certificate_N_over_log_ratio": summary(cert),
            "normal_frontier": frontiers,
        }

    def summary(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "records": len(self.records),
            "theorem_failures": len(self.theorem_failures),
            "exit_code": self.exit_code,
            "counts": self.counts(),
            "statistics": self.statistics(),
        }


def _run_one(task, config):
    recs = run_task(task, config)
    for r in recs:
        r["suite"] = task[0]
    return recs


def run_suite(config: SuiteConfig) -> RunReport:
    """Run every task of the configured suites; records come back in task order."""
    tasks = tasks_for(config)
    workers = config.resolved_workers()
    log.info("running %d tasks with %d worker(s)", len(tasks), workers)
    report = RunReport(config)
    if workers == 1 or len(tasks) <= 1:
        results = map(partial(_run_one, config=config), tasks)
        for task, recs in zip(tasks, results):
            log.debug("%s: %d records", "/".join(task), len(recs))
            report.records.extend(recs)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for recs in pool.map(partial(_run_one, config=config), tasks):
                report.records.extend(recs)
    return report


def jsonl_text(report: RunReport) -> str:
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in report.records)


def csv_text(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.records:
        w.writerow([r["kind"], r["group"], r["seed"], r["lhs"], r["rhs"], "true" if r["pass"] else "false"])
    return buf.getvalue()


def emit(report: RunReport, out_dir: str | Path, formats=("json", "csv")) -> dict[str, Path]:
    """Write ``instances.jsonl``, ``summary.csv`` and ``run.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    if "json" in formats:
        paths["jsonl"] = out / "instances.jsonl"
        paths["jsonl"].write_text(jsonl_text(report))
        paths["run"] = out / "run.json"
        paths["run"].write_text(json.dumps(report.summary(), sort_keys=True, indent=2) + "\n")
    if "csv" in formats:
        paths["csv"] = out / "summary.csv"
        paths["csv"].write_text(csv_text(report))
    return paths
