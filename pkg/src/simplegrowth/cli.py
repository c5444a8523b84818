"""Command line interface.

    simplegrowth group info PSL2(7)
    simplegrowth verify --suite inequalities --seed 42 --samples 200 --out runs/ineq
    simplegrowth decompose PSL2(7) --set-size 3 --seed 1
    simplegrowth normal sweep Alt(6)
    simplegrowth reverify runs/ineq/instances.jsonl
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .groups import GroupError, get_group, invariants, parse_spec
from .growth import doubling_decomposition, verify_certificate
from .harness import SUITES, ConfigError, SuiteConfig, emit, reverify_file, run_suite
from .harness.sampling import instance_rng, sample_subset
from .normalsets import covering_number, enumerate_normal_subsets, growth_frontier

NORMAL_CSV_COLUMNS = ("class_ids", "size", "square", "growth_exponent", "m", "a_ratio")


def _group_info(args) -> int:
    G = get_group(parse_spec(args.spec))
    info = {
        "spec": G.spec.to_dict(),
        "order": G.order,
        "degree": G.degree,
        "simple": G.spec.is_simple,
        "abelian": G.spec.is_abelian,
        "generators": [g.tolist() for g in G.generators],
        "invariants": invariants(G).to_dict(),
    }
    print(json.dumps(info, indent=2))
    if args.cache:
        G.write_cache(args.cache)
    return 0


def _verify(args) -> int:
    cfg = SuiteConfig.load(args.config) if args.config else SuiteConfig()
    if args.suite and args.suite != "all":
        cfg.suites = [args.suite]
    if args.seed is not None:
        cfg.seed = args.seed
    if args.groups:
        cfg.groups = args.groups
    if args.samples is not None:
        keys = cfg.samples.keys() if args.suite in (None, "all") else _sample_keys(args.suite)
        for key in keys:
            cfg.samples[key] = args.samples
    if args.workers is not None:
        cfg.workers = args.workers
    cfg.__post_init__()
    report = run_suite(cfg)
    out = args.out or cfg.out
    if out:
        paths = emit(report, out)
        for name, path in paths.items():
            print(f"wrote {name}: {path}", file=sys.stderr)
    summary = report.summary()
    for key, c in summary["counts"].items():
        print(f"{key:48s} pass={c['pass']:6d} fail={c['fail']:4d}")
    print(f"theorem failures: {summary['theorem_failures']}")
    return report.exit_code


def _sample_keys(suite: str) -> list[str]:
    return {"growth": ["growth", "bigset"]}.get(suite, [suite])


def _decompose(args) -> int:
    G = get_group(parse_spec(args.spec))
    rng = instance_rng(args.seed, f"decompose/{G.name}", 0)
    S = sample_subset(G, args.set_size, rng)
    cert = doubling_decomposition(S)
    cert.verified = verify_certificate(cert)
    text = json.dumps(cert.to_dict(), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return 0 if cert.verified else 1


def _normal_sweep(args) -> int:
    G = get_group(parse_spec(args.spec))
    sets = enumerate_normal_subsets(G, max_classes=args.max_classes, include_identity=args.with_identity)
    covers = [covering_number(ns) for ns in sets]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(NORMAL_CSV_COLUMNS)
        for c in covers:
            d = c.to_dict()
            w.writerow([" ".join(map(str, d["class_ids"])), d["size"], d["square"], f"{d['growth_exponent']:.6f}", d["m"], f"{d['a_ratio']:.6f}"])
    finally:
        if args.out:
            fh.close()
    print(json.dumps(growth_frontier(covers), indent=2), file=sys.stderr)
    return 0


def _reverify(args) -> int:
    n, problems = reverify_file(args.path)
    for p in problems:
        print(p)
    print(f"re-verified {n} records, {len(problems)} discrepancies")
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simplegrowth", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group information").add_subparsers(dest="action", required=True)
    info = grp.add_parser("info", help="order, generators, classes and invariants")
    info.add_argument("spec", help="e.g. Alt(5), PSL2(7), PSL3(2), Cyclic(12)")
    info.add_argument("--cache", help="also write the element cache file here")
    info.set_defaults(func=_group_info)

    ver = sub.add_parser("verify", help="run experiment suites")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--seed", type=int, default=None, help="default 42")
    ver.add_argument("--samples", type=int, default=None, help="instances per check (suite defaults otherwise)")
    ver.add_argument("--out", help="output directory for instances.jsonl, summary.csv, run.json")
    ver.add_argument("--config", help="JSON config file")
    ver.add_argument("--groups", nargs="+", help="override the group battery")
    ver.add_argument("--workers", type=int, default=None, help="worker processes (env SIMPLEGROWTH_WORKERS wins)")
    ver.set_defaults(func=_verify)

    dec = sub.add_parser("decompose", help="write G as a product of conjugates of a random set")
    dec.add_argument("spec")
    dec.add_argument("--set-size", type=int, default=2)
    dec.add_argument("--seed", type=int, default=42)
    dec.add_argument("--out", help="write the certificate JSON here")
    dec.set_defaults(func=_decompose)

    nrm = sub.add_parser("normal", help="normal subsets").add_subparsers(dest="action", required=True)
    sw = nrm.add_parser("sweep", help="covering numbers of all unions of nontrivial classes (CSV)")
    sw.add_argument("spec")
    sw.add_argument("--max-classes", type=int, default=None)
    sw.add_argument("--with-identity", action="store_true", help="also include each union plus the identity")
    sw.add_argument("--out", help="CSV path (default stdout)")
    sw.set_defaults(func=_normal_sweep)

    rv = sub.add_parser("reverify", help="recompute every record of an instances.jsonl file")
    rv.add_argument("path")
    rv.set_defaults(func=_reverify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GroupError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
