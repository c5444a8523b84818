"""Re-verification of emitted reports from their serialised inputs."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from ..groups import IndexedGroup, get_group
from ..growth import DecompositionCertificate, verify_certificate
from ..inequalities import (
    WordPattern,
    check_petridis2,
    check_petridis_tripling,
    check_plun_j,
    check_pr_estimates,
    check_prop_top,
    check_ruzsa,
    check_skew_chain,
    check_tao,
    conj2_implies_conj3_demo,
    plunnecke_report,
)
from ..normalsets import NormalSet, check_normal_growth, check_shalev, check_shalev2, covering_number
from ..reports import Report, fmt
from ..setalg import ElementSet


@lru_cache(maxsize=16)
def _perm_index(G: IndexedGroup) -> dict[bytes, int]:
    return {p.tobytes(): i for i, p in enumerate(G.perms)}


def covering_classes_by_reps(S: ElementSet, m: int) -> set[int]:
    """Class ids of ``S^m`` for a normal ``S``, computed on class representatives.

    ``S^m`` is normal, so it suffices to decide whether each representative
    ``r`` lies in it: ``r in S^m`` iff ``r s^-1 in S^(m-1)`` for some ``s in S``.
    Products use raw permutation composition and a byte-keyed lookup, so this
    shares nothing with the vectorised product kernel.
    """
    G = S.group
    cp = G.classes
    where = _perm_index(G)
    perms = G.perms
    inv_perms = [perms[s].argsort().astype(perms.dtype) for s in S.to_list()]
    current = {int(c) for c in cp.class_of[S.indices]}
    for _ in range(m - 1):
        nxt = set()
        for cid, rep in enumerate(cp.class_reps.tolist()):
            r = perms[rep]
            for sinv in inv_perms:
                # (r s^-1)[x] = s^-1[r[x]]
                if int(cp.class_of[where[sinv[r].tobytes()]]) in current:
                    nxt.add(cid)
                    break
        current = nxt
    return current


def _set(G, ids) -> ElementSet:
    return ElementSet.from_indices(G, ids)


def _normal(G, ids) -> NormalSet:
    return NormalSet.from_classes(G, ids)


def _covering(G, rec):
    ns = _normal(G, rec["inputs"]["classes"])
    cover = covering_number(ns)
    ids = covering_classes_by_reps(ns.view, cover.m)
    prev = covering_classes_by_reps(ns.view, cover.m - 1) if cover.m > 1 else set(ns.class_ids)
    ok = len(ids) == G.classes.count and (cover.m == 1 or len(prev) < G.classes.count)
    return cover.m, cover.m if ok else 0


def _decomposition(G, rec):
    cert = DecompositionCertificate.from_dict(rec["extra"]["certificate"])
    return (G.order if verify_certificate(cert, group=G) else 0), G.order


def _from_report(fn):
    def run(G, rec):
        r = fn(G, rec["inputs"])
        return r.lhs, r.rhs

    return run


def _lengths(G, rec):
    cert = rec["extra"]
    S = rec["inputs"]["S"]
    if rec["kind"] == "decomposition_info_bound":
        return len(S) ** cert["N"], G.order
    if cert["N"] == 1:
        return 1, 1
    return cert["N"], 3 * cert["bigset_m"] * 2 ** cert["doublings"]


def _frontier(G, rec):
    from .suites import normal_sweep_covers

    if rec["inputs"]["mode"] != "exhaustive":
        return Fraction(rec["lhs"]), Fraction(rec["rhs"])
    covers = normal_sweep_covers(G)
    b = max(c.m for c in covers)
    return b, b


def _recompute_invariants(G, rec):
    from .suites import invariant_reports

    for r in invariant_reports(G):
        if r.kind == rec["kind"]:
            return r.lhs, r.rhs
    raise KeyError(rec["kind"])


def _recompute_growth(builder):
    def run(G, rec):
        reports = builder(_set(G, rec["inputs"]["S"]))
        reports = reports if isinstance(reports, list) else [reports]
        r = next(r for r in reports if r.kind == rec["kind"])
        return r.lhs, r.rhs

    return run


@lru_cache(maxsize=1)
def _registry():
    from . import suites

    R = {
        "ruzsa": _from_report(lambda G, i: check_ruzsa(_set(G, i["U"]), _set(G, i["V"]), _set(G, i["W"]))),
        "petridis_tripling": _from_report(lambda G, i: check_petridis_tripling(_set(G, i["S"]))),
        "petridis2": _from_report(lambda G, i: check_petridis2(_set(G, i["C"]), _set(G, i["X"]), _set(G, i["B"]))),
        "tao": _from_report(lambda G, i: check_tao(_set(G, i["S"]), WordPattern.from_list(i["pattern"]))),
        "skew_chain": _from_report(lambda G, i: check_skew_chain(_set(G, i["S"]), WordPattern.from_list(i["pattern"]))),
        "prop_top": _from_report(
            lambda G, i: check_prop_top(_set(G, i["A"]), _set(G, i["B"]), WordPattern.from_list(i["pattern"]))
        ),
        "plunnecke_normal": _from_report(lambda G, i: plunnecke_report(_set(G, i["A"]), _set(G, i["B"]), i["m"], i["mode"])),
        "plunnecke_abelian": _from_report(lambda G, i: plunnecke_report(_set(G, i["A"]), _set(G, i["B"]), i["m"], i["mode"])),
        "pr_estimates": _from_report(lambda G, i: check_pr_estimates(_set(G, i["A"]), _set(G, i["B"]), i["m"], i["n"])),
        "plun_j": _from_report(lambda G, i: check_plun_j(_set(G, i["A"]), _set(G, i["B"]), i["j"], i["m"])),
        "conj2_conj3": _from_report(lambda G, i: conj2_implies_conj3_demo(_set(G, i["S"]), i["conjugators"])),
        "normal_growth": _from_report(
            lambda G, i: check_normal_growth(_normal(G, i["classes"]), Fraction(i["epsilon"]), i["b"])
        ),
        "shalev": _from_report(lambda G, i: check_shalev(_set(G, i["A"]), _normal(G, i["classes"]), Fraction(i["delta"]))),
        "shalev2": _from_report(lambda G, i: check_shalev2(_set(G, i["S"]), Fraction(i["delta"]))),
        "normal_commutation": _from_report(
            lambda G, i: suites.commutation_report(_set(G, i["X"]), _set(G, i["B"]), i["m"])
        ),
        "gowers": _from_report(lambda G, i: suites.gowers_report(_set(G, i["S"]), i["k"])),
        "translate_generating": _recompute_growth(suites.translate_report),
        "growth_disjunction": _recompute_growth(suites.disjunction_report),
        "big_set_exact": _recompute_growth(suites.big_set_reports),
        "big_set_bound": _recompute_growth(suites.big_set_reports),
        "covering": _covering,
        "decomposition": _decomposition,
        "decomposition_info_bound": _lengths,
        "decomposition_length": _lengths,
        "normal_frontier": _frontier,
    }
    for kind in ("class_equation", "minclass_lower", "minclass_below_order", "order_upper", "mindeg_order"):
        R[kind] = _recompute_invariants
    return R


def reverify_record(rec: dict) -> list[str]:
    """Recompute one serialised report; returns a list of discrepancy messages."""
    G = get_group(rec["group"])
    fn = _registry().get(rec["kind"])
    if fn is None:
        return [f"{rec['kind']}: no recompute rule"]
    lhs, rhs = fn(G, rec)
    problems = []
    if fmt(lhs) != rec["lhs"]:
        problems.append(f"{rec['kind']}#{rec.get('instance')} {rec['group']}: lhs {fmt(lhs)} != {rec['lhs']}")
    if fmt(rhs) != rec["rhs"]:
        problems.append(f"{rec['kind']}#{rec.get('instance')} {rec['group']}: rhs {fmt(rhs)} != {rec['rhs']}")
    rep = Report(rec["kind"], rec["group"], {}, lhs, rhs, relation=rec["relation"])
    if rep.passed != rec["pass"]:
        problems.append(f"{rec['kind']}#{rec.get('instance')} {rec['group']}: pass flag differs")
    return problems


def reverify_file(path: str | Path) -> tuple[int, list[str]]:
    """Re-verify every line of a JSON-lines report file; returns ``(checked, problems)``."""
    problems: list[str] = []
    n = 0
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            problems.extend(reverify_record(json.loads(line)))
            n += 1
    return n, problems
