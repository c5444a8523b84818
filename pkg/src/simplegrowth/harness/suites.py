"""Instance batteries for each suite.

A *task* is one ``(suite, group, kind)`` triple; it generates its own seeded
instances and returns the reports in instance order. Tasks are independent,
so they can run in any process and be reassembled in task order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from ..groups import Family, IndexedGroup, get_group, invariants
from ..growth import (
    doubling_decomposition,
    gowers_check,
    gowers_threshold,
    greedy_big_set,
    group_mindeg,
    theorem2_certificate,
    translate_to_generating,
    verify_certificate,
)
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
    min_ratio_subset,
    plunnecke_report,
)
from ..normalsets import (
    SWEEP_CLASS_LIMIT,
    check_normal_growth,
    check_shalev,
    check_shalev2,
    covering_number,
    enumerate_normal_subsets,
    growth_frontier,
    sample_normal_subsets,
)
from ..reports import Report
from ..setalg import closure, power, product
from .config import SuiteConfig
from .sampling import instance_rng, sample_normal, sample_pattern, sample_size, sample_subset
from .verify import covering_classes_by_reps

Task = tuple[str, str, str]

INEQUALITY_KINDS = (
    "ruzsa",
    "petridis_tripling",
    "petridis2",
    "tao",
    "prop_top",
    "skew_chain",
    "plunnecke_normal",
    "pr_estimates",
    "plun_j",
    "plunnecke_abelian",
)
GROWTH_KINDS = ("group_invariants", "growth_disjunction", "big_set", "translate_generating")
PLUN_J_PAIRS = [(j, m) for j in (1, 2) for m in range(j, 5)]
PR_PAIRS = [(1, 1), (1, 2), (2, 1)]


def tasks_for(config: SuiteConfig) -> list[Task]:
    tasks = []
    for suite in config.suites:
        for name in config.groups:
            G = get_group(name)
            if suite == "inequalities":
                for kind in INEQUALITY_KINDS:
                    if kind == "plunnecke_abelian" and not G.spec.is_abelian:
                        continue
                    tasks.append((suite, name, kind))
            elif not G.spec.is_simple:
                continue
            elif suite == "growth":
                tasks.extend((suite, name, k) for k in GROWTH_KINDS)
            elif suite == "gowers":
                if group_mindeg(G) is not None:
                    tasks.append((suite, name, "gowers"))
            elif suite == "decomposition":
                tasks.append((suite, name, "decomposition"))
            elif suite == "normal":
                tasks.extend((suite, name, k) for k in ("normal_sweep", "normal_commutation", "shalev", "shalev2"))
    return tasks


def run_task(task: Task, config: SuiteConfig) -> list[dict]:
    suite, name, kind = task
    G = get_group(name)
    reports = _KINDS[kind](G, config, f"{suite}/{name}/{kind}")
    out = []
    for r in reports:
        r.seed = config.seed
        out.append(r.to_dict())
    return out


def _tagged(r: Report, i: int) -> Report:
    r.instance = i
    return r


def _rngs(config: SuiteConfig, stream: str, n: int):
    for i in range(n):
        yield i, instance_rng(config.seed, stream, i)


def _rand_set(G: IndexedGroup, rng, lo: int, hi: int):
    return sample_subset(G, sample_size(rng, lo, min(hi, G.order)), rng)


# -- inequalities -----------------------------------------------------------------


def _ruzsa(G, cfg, stream):
    lo, hi = cfg.set_size
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        U, V, W = (_rand_set(G, rng, 1, hi) for _ in range(3))
        out.append(_tagged(check_ruzsa(U, V, W), i))
    return out


def _petridis(G, cfg, stream):
    lo, hi = cfg.set_size
    return [
        _tagged(check_petridis_tripling(_rand_set(G, rng, lo, hi)), i)
        for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"])
    ]


def _petridis2(G, cfg, stream):
    lo, hi = cfg.set_size
    cap = min(cfg.subset_cap, 12)
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        A = _rand_set(G, rng, 1, cap)
        B = _rand_set(G, rng, 1, hi)
        C = _rand_set(G, rng, 1, hi)
        X = min_ratio_subset(A, B, cap=cfg.subset_cap)
        r = check_petridis2(C, X, B)
        r.inputs["A"] = A.to_list()
        out.append(_tagged(r, i))
    return out


def _skew(G, cfg, stream, lengths: Callable[[int], int], check=check_skew_chain):
    lo, hi = cfg.set_size
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        S = _rand_set(G, rng, lo, hi)
        pattern = WordPattern.of(sample_pattern(G, lengths(i), rng))
        out.append(_tagged(check(S, pattern), i))
    return out


def _tao(G, cfg, stream):
    return _skew(G, cfg, stream, lambda i: 3, check=check_tao)


def _skew_chain(G, cfg, stream):
    return _skew(G, cfg, stream, lambda i: i % 5 + 1)


def _prop_top(G, cfg, stream):
    lo, hi = cfg.set_size
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        A = _rand_set(G, rng, 1, hi)
        B = _rand_set(G, rng, lo, hi)
        pattern = WordPattern.of(sample_pattern(G, 3, rng))
        out.append(_tagged(check_prop_top(A, B, pattern), i))
    return out


def _plunnecke(G, cfg, stream, mode: str):
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        A = _rand_set(G, rng, 1, cfg.subset_cap)
        if mode == "abelian":
            B = _rand_set(G, rng, 1, cfg.set_size[1])
        else:
            B = sample_normal(G, rng).view
        out.append(_tagged(plunnecke_report(A, B, i % 4 + 1, mode), i))
    return out


def _plunnecke_normal(G, cfg, stream):
    return _plunnecke(G, cfg, stream, "normal")


def _plunnecke_abelian(G, cfg, stream):
    return _plunnecke(G, cfg, stream, "abelian")


def _pr(G, cfg, stream):
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        A = _rand_set(G, rng, 1, cfg.set_size[1])
        B = sample_normal(G, rng).view
        m, n = PR_PAIRS[i % len(PR_PAIRS)]
        out.append(_tagged(check_pr_estimates(A, B, m, n), i))
    return out


def _plun_j(G, cfg, stream):
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["inequalities"]):
        A = _rand_set(G, rng, 1, cfg.set_size[1])
        B = sample_normal(G, rng).view
        j, m = PLUN_J_PAIRS[i % len(PLUN_J_PAIRS)]
        out.append(_tagged(check_plun_j(A, B, j, m), i))
    return out


# -- growth -----------------------------------------------------------------------


def invariant_reports(G: IndexedGroup) -> list[Report]:
    inv = invariants(G)
    name = G.name
    sizes = {"class_sizes": list(inv.class_sizes)}
    out = [Report("class_equation", name, {}, lhs=sum(inv.class_sizes), rhs=G.order, relation="==", extra=sizes)]
    if G.spec.family is Family.PSL2:
        q, r, k = inv.q, inv.rank, inv.mindeg_lb
        info = {"q": q, "r": r, "k": k, "minclass": inv.minclass}
        out += [
            Report("minclass_lower", name, {}, lhs=q**r, rhs=inv.minclass, extra=info),
            Report("minclass_below_order", name, {}, lhs=inv.minclass, rhs=G.order, relation="<", extra=info),
            Report("order_upper", name, {}, lhs=G.order, rhs=q ** (8 * r * r), extra=info),
            Report("mindeg_order", name, {}, lhs=G.order, rhs=k ** (8 * r * r), relation="<", extra=info),
        ]
    return out


def _group_invariants(G, cfg, stream):
    return invariant_reports(G)


def disjunction_report(S) -> Report:
    G = S.group
    w = theorem2_certificate(S)
    inputs = {"S": S.to_list()}
    if w.branch == "CUBE":
        return Report("growth_disjunction", G.name, inputs, lhs=G.order, rhs=G.order, relation="==", extra=w.to_dict())
    return Report("growth_disjunction", G.name, inputs, lhs=w.size, rhs=S.card + 1, relation=">=", extra=w.to_dict())


def _growth_disjunction(G, cfg, stream):
    return [
        _tagged(disjunction_report(sample_subset(G, sample_size(rng, 2, G.order // 2), rng)), i)
        for i, rng in _rngs(cfg, stream, cfg.samples["growth"])
    ]


def big_set_reports(S) -> list[Report]:
    res = greedy_big_set(S)
    G = S.group
    inputs = {"S": S.to_list()}
    extra = {"m": res.m, "conjugators": res.conjugators, "X": res.X.card, "minclass_SS^-1": res.minclass_ss}
    return [
        Report("big_set_exact", G.name, inputs, lhs=res.X.card, rhs=S.card**res.m, relation="==", extra=extra),
        Report(
            "big_set_bound",
            G.name,
            inputs,
            lhs=(res.X.card * S.card) ** 2,
            rhs=res.minclass_ss,
            relation=">=",
            extra={**extra, "form": "(|X||S|)^2 >= minclass(SS^-1, G)"},
        ),
    ]


def _big_set(G, cfg, stream):
    lo, hi = cfg.small_set_size
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["bigset"]):
        for r in big_set_reports(_rand_set(G, rng, lo, hi)):
            out.append(_tagged(r, i))
    return out


def translate_report(S) -> Report:
    G = S.group
    T, u, x = translate_to_generating(S)
    return Report(
        "translate_generating",
        G.name,
        {"S": S.to_list(), "u": u, "x": x},
        lhs=closure(T).card,
        rhs=G.order,
        relation="==",
    )


def _translate(G, cfg, stream):
    return [
        _tagged(translate_report(sample_subset(G, 2, rng)), i)
        for i, rng in _rngs(cfg, stream, cfg.samples["growth"])
    ]


# -- gowers -----------------------------------------------------------------------


def gowers_report(S, k: int) -> Report:
    G = S.group
    res = gowers_check(S, k)
    cube = G.order if res.cube_full else product(product(S, S), S).card
    return Report(
        "gowers",
        G.name,
        {"S": S.to_list(), "k": k},
        lhs=cube,
        rhs=G.order,
        relation="==",
        extra={"threshold": res.threshold, "applies": res.applies},
    )


def _gowers(G, cfg, stream):
    k = group_mindeg(G)
    thr = gowers_threshold(G.order, k)
    return [
        _tagged(gowers_report(sample_subset(G, sample_size(rng, thr, G.order), rng), k), i)
        for i, rng in _rngs(cfg, stream, cfg.samples["gowers"])
    ]


# -- decomposition ----------------------------------------------------------------


def decomposition_reports(S) -> list[Report]:
    G = S.group
    cert = doubling_decomposition(S)
    ok = verify_certificate(cert)
    inputs = {"S": S.to_list()}
    cd = cert.to_dict()
    name = G.name
    N = cert.N
    extra_len = {"N": N, "bigset_m": cert.bigset_m, "doublings": cert.doublings, "log_ratio": math.log(G.order) / math.log(S.card)}
    out = [
        Report("decomposition", name, inputs, lhs=G.order if ok else 0, rhs=G.order, relation="==", extra={"certificate": cd}),
        Report(
            "decomposition_info_bound",
            name,
            inputs,
            lhs=S.card**N,
            rhs=G.order,
            relation=">=",
            extra={**extra_len, "form": "|S|^N >= |G|"},
        ),
        Report("decomposition_length", name, inputs, lhs=N, rhs=cert.expected_length, relation="==", extra=extra_len),
    ]
    demo = conj2_implies_conj3_demo(S, cert.conjugators)
    demo.inputs = inputs | demo.inputs
    out.append(demo)
    return out


def _decomposition(G, cfg, stream):
    lo, hi = cfg.small_set_size
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["decomposition"]):
        for r in decomposition_reports(_rand_set(G, rng, lo, hi)):
            out.append(_tagged(r, i))
    return out


# -- normal sets ------------------------------------------------------------------


def covering_report(ns, cover) -> Report:
    G = ns.view.group
    cov_ids = covering_classes_by_reps(ns.view, cover.m)
    prev = covering_classes_by_reps(ns.view, cover.m - 1) if cover.m > 1 else set(ns.class_ids)
    full = len(cov_ids) == G.classes.count
    below = cover.m == 1 or len(prev) < G.classes.count
    return Report(
        "covering",
        G.name,
        {"classes": list(ns.class_ids)},
        lhs=cover.m,
        rhs=cover.m if (full and below) else 0,
        relation="==",
        extra=cover.to_dict(),
    )


def normal_sweep_covers(G: IndexedGroup):
    return [covering_number(ns) for ns in enumerate_normal_subsets(G, include_identity=True)]


def normal_sweep(G: IndexedGroup, cfg: SuiteConfig, stream: str):
    """Covering numbers of every normal subset (or a seeded sample for big class counts)."""
    if G.classes.count - 1 <= SWEEP_CLASS_LIMIT:
        sets = enumerate_normal_subsets(G, include_identity=True)
        mode = "exhaustive"
    else:
        sets = sample_normal_subsets(G, cfg.samples["normal"], instance_rng(cfg.seed, stream, 0), include_identity=True)
        mode = "sampled"
    covers = [covering_number(ns) for ns in sets]
    return sets, covers, mode


def _normal_sweep(G, cfg, stream):
    sets, covers, mode = normal_sweep(G, cfg, stream)
    eps = Fraction(cfg.normal_epsilon)
    frontier = growth_frontier(covers)
    out = []
    for i, (ns, cov) in enumerate(zip(sets, covers)):
        out.append(_tagged(covering_report(ns, cov), i))
        out.append(_tagged(check_normal_growth(ns, eps, cfg.normal_b, cover=cov), i))
    summary = Report(
        "normal_frontier",
        G.name,
        {"mode": mode, "count": len(sets)},
        lhs=frontier["b_all_covered"],
        rhs=frontier["b_all_covered"],
        relation="==",
        theorem=False,
        extra=frontier,
    )
    out.append(summary)
    return out


def commutation_report(X, B, m: int) -> Report:
    G = X.group
    lhs = product(X, power(B, m + 1)).card
    rhs = product(product(power(B, m), X), B).card
    return Report(
        "normal_commutation",
        G.name,
        {"X": X.to_list(), "B": B.to_list(), "m": m},
        lhs=lhs,
        rhs=rhs,
        relation="==",
    )


def _normal_commutation(G, cfg, stream):
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["normal"]):
        X = _rand_set(G, rng, 1, cfg.set_size[1])
        B = sample_normal(G, rng).view
        out.append(_tagged(commutation_report(X, B, i % 3 + 1), i))
    return out


def _shalev(G, cfg, stream):
    delta = Fraction(cfg.shalev_delta)
    p, q = delta.numerator, delta.denominator
    amax = int(math.floor(G.order ** (1 - float(delta))))
    while amax**q > G.order ** (q - p):
        amax -= 1
    out = []
    for i, rng in _rngs(cfg, stream, cfg.samples["normal"]):
        A = _rand_set(G, rng, 1, amax)
        B = sample_normal(G, rng)
        while B.card == G.order:
            B = sample_normal(G, rng)
        out.append(_tagged(check_shalev(A, B, delta), i))
    return out


def _shalev2(G, cfg, stream):
    delta = Fraction(cfg.shalev2_delta)
    p, q = delta.numerator, delta.denominator
    smax = int(math.floor(G.order ** (1 - float(delta))))
    while smax**q > G.order ** (q - p):
        smax -= 1
    smax = min(smax, cfg.set_size[1] * 2)
    return [
        _tagged(check_shalev2(_rand_set(G, rng, 2, smax), delta), i)
        for i, rng in _rngs(cfg, stream, cfg.samples["normal"])
    ]


_KINDS = {
    "ruzsa": _ruzsa,
    "petridis_tripling": _petridis,
    "petridis2": _petridis2,
    "tao": _tao,
    "prop_top": _prop_top,
    "skew_chain": _skew_chain,
    "plunnecke_normal": _plunnecke_normal,
    "plunnecke_abelian": _plunnecke_abelian,
    "pr_estimates": _pr,
    "plun_j": _plun_j,
    "group_invariants": _group_invariants,
    "growth_disjunction": _growth_disjunction,
    "big_set": _big_set,
    "translate_generating": _translate,
    "gowers": _gowers,
    "decomposition": _decomposition,
    "normal_sweep": _normal_sweep,
    "normal_commutation": _normal_commutation,
    "shalev": _shalev,
    "shalev2": _shalev2,
}
