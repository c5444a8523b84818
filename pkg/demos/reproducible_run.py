"""A small seeded batch, written to disk and re-verified from the written records.

    python demos/reproducible_run.py [out_dir]
"""

import sys
import tempfile

from simplegrowth.harness import SuiteConfig, emit, reverify_file, run_suite

out = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="simplegrowth-")
cfg = SuiteConfig(
    groups=["Alt(5)", "PSL2(7)", "Cyclic(12)"],
    suites=["inequalities", "growth"],
    samples={"inequalities": 20, "growth": 20, "bigset": 10},
)
report = run_suite(cfg)
paths = emit(report, out)
for key, count in report.counts().items():
    print(f"{key:40s} {count}")
n, problems = reverify_file(paths["jsonl"])
print(f"{len(report.records)} records in {out}; re-verified {n}, {len(problems)} discrepancies")
