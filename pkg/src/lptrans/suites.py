"""Seeded randomized verification suites.

Each suite draws ``trials`` instances from per-trial seeds derived from one
master seed, runs a construction on each and checks its guarantees with the
oracle. Trials are independent, so they can run in worker processes; the
outcomes are always merged in trial order, which keeps reports identical
whatever the worker count.
"""

from __future__ import annotations

import zlib
from collections import Counter
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExhausted, HypothesisError, LptError
from .generators import (
    HOST_NAMES,
    SplitMix64,
    gen_blowup,
    gen_chordal,
    gen_circular_arc,
    gen_class_filtered,
    gen_fat_structure,
    gen_hgraph,
    gen_interval,
)
from .graph import Graph, component_masks, dominates_mask, from_mask, iter_bits, neighborhood_mask, to_mask
from .hgraph import EXACT_LIMIT, extract_q, is_nice, normalize_nice, realize, verify_claims
from .oracle import enumerate_longest_paths, is_transversal, naive_longest_paths
from .pipelines import bullchair_transversal, chordal_clique_transversal, chordal_refined_transversal, ptfree_transversal
from .recognizers import (
    bull,
    chair,
    contains_induced,
    cycle_graph,
    find_monitor_path,
    is_chordal,
    matched_clique_index,
    path_graph,
)
from .refine import RefinementInput, component_profiles, minimal_dominating_subset, refine_transversal

__all__ = ["SUITES", "TrialOutcome", "SuiteReport", "trial_seeds", "run_suite", "random_connected_graph"]


@dataclass
class TrialOutcome:
    violations: list[str] = field(default_factory=list)
    stats: Counter = field(default_factory=Counter)
    skipped: str | None = None

    def fail(self, message: str) -> None:
        self.violations.append(message)


@dataclass
class SuiteReport:
    """Aggregated outcome of one suite run."""

    suite: str
    seed: int
    trials: int
    checked: int = 0
    skipped: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    stats: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [
            f"suite: {self.suite}",
            f"seed: {self.seed}",
            f"trials: {self.trials}",
            f"checked: {self.checked}",
            f"skipped: {len(self.skipped)}",
            f"violations: {len(self.violations)}",
        ]
        out += [f"stat.{k}: {v}" for k, v in sorted(self.stats.items())]
        out += [f"skip: {s}" for s in self.skipped]
        out += [f"violation: {v}" for v in self.violations]
        return out

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "checked": self.checked,
            "skipped": list(self.skipped),
            "violations": list(self.violations),
            "stats": dict(sorted(self.stats.items())),
            "ok": self.ok,
        }


def trial_seeds(suite: str, seed: int, trials: int) -> list[int]:
    rng = SplitMix64(seed ^ zlib.crc32(suite.encode()))
    return [rng.next_u64() for _ in range(trials)]


def random_connected_graph(rng: SplitMix64, lo: int, hi: int, p_lo: float = 0.2, p_hi: float = 0.8) -> Graph:
    n = rng.between(lo, hi)
    p = p_lo + (p_hi - p_lo) * rng.random()
    return gen_class_filtered(rng.next_u64(), n, p, (), budget=10_000)


def _verify(out: TrialOutcome, g: Graph, cert, bound: int | None, tag: str) -> None:
    if not cert.verified:
        out.fail(f"{tag}: certificate {sorted(cert.transversal)} not verified")
    elif not is_transversal(g, cert.transversal):
        out.fail(f"{tag}: certificate {sorted(cert.transversal)} is not a transversal")
    if bound is not None and len(cert) > bound:
        out.fail(f"{tag}: size {len(cert)} exceeds bound {bound}")
    out.stats[f"size_{len(cert)}"] += 1
    if cert.branch:
        out.stats[f"branch_{cert.branch}"] += 1


# -- oracle ---------------------------------------------------------------------------

def _trial_oracle(seed: int, index: int) -> TrialOutcome:
    """DP against naive DFS, then pairwise intersection of longest paths."""
    out = TrialOutcome()
    rng = SplitMix64(seed)
    g = random_connected_graph(rng, 1, 10, 0.15, 0.6)
    dp = enumerate_longest_paths(g)
    naive = naive_longest_paths(g)
    tag = f"trial {index} n={g.n} m={g.m}"
    if dp.length != naive.length:
        out.fail(f"{tag}: length dp={dp.length} naive={naive.length}")
    elif dp.paths != naive.paths:
        out.fail(f"{tag}: path sets differ ({len(dp)} vs {len(naive)})")
    masks = np.unique(np.array(dp.masks, dtype=np.int64))
    disjoint = (masks[:, None] & masks[None, :]) == 0
    if disjoint.any():
        i, j = map(int, np.argwhere(disjoint)[0])
        out.fail(f"{tag}: longest paths on {sorted(from_mask(int(masks[i])))} and {sorted(from_mask(int(masks[j])))} are disjoint")
    out.stats["paths_total"] += len(dp)
    return out


# -- refinement --------------------------------------------------------------------

def _prune_connected_dominating(rng: SplitMix64, g: Graph, pool: int, target: int) -> int:
    """Random inclusion-minimal connected subset of ``pool`` dominating ``target``."""
    d = pool
    order = list(iter_bits(pool))
    rng.shuffle(order)
    for v in order:
        trial = d & ~(1 << v)
        if trial and len(component_masks(g, trial)) == 1 and not target & ~(trial | neighborhood_mask(g, trial)):
            d = trial
    return d


def _synthetic_refinement(rng: SplitMix64, g: Graph) -> RefinementInput:
    m = g.all_mask
    order = list(range(g.n))
    rng.shuffle(order)
    keep = rng.between(1, g.n)
    for v in order:
        if m.bit_count() <= keep:
            break
        trial = m & ~(1 << v)
        if len(component_masks(g, trial)) == 1 and is_transversal(g, iter_bits(trial)):
            m = trial
    d = _prune_connected_dominating(rng, g, m, m)
    profiles = component_profiles(g, iter_bits(m))
    profile = None
    s = 0
    if profiles:
        best = [p for p in profiles if p.t_value == profiles[0].t_value]
        profile = rng.choice(best)
        s = to_mask(minimal_dominating_subset(g, iter_bits(m), profile.boundary))
        for v in iter_bits(m):
            if rng.chance(0.2):
                s |= 1 << v
    return RefinementInput(g, from_mask(m), from_mask(d), from_mask(s), profile=profile)


def _monitor_refinement(g: Graph, t: int) -> RefinementInput | None:
    x = find_monitor_path(g, t)
    xm = to_mask(x)
    nm = xm | neighborhood_mask(g, xm)
    if nm == g.all_mask:
        return None
    comp = component_profiles(g, iter_bits(nm))[0].component
    cm = to_mask(comp)
    w = next(w for w in iter_bits(nm) if not cm & ~g.adj(w))
    return RefinementInput(g, from_mask(nm), frozenset(x), frozenset({w}))


def _chordal_refinement(g: Graph) -> RefinementInput | None:
    k = chordal_clique_transversal(g).transversal
    if to_mask(k) == g.all_mask:
        return None
    d = minimal_dominating_subset(g, k, component_profiles(g, k)[0].boundary)
    return RefinementInput(g, k, d, d)


def _trial_refine(seed: int, index: int) -> TrialOutcome:
    out = TrialOutcome()
    rng = SplitMix64(seed)
    kind = ("monitor", "chordal", "synthetic", "synthetic")[index % 4]
    inp = None
    if kind == "monitor":
        t = rng.choice((5, 6))
        try:
            g = gen_class_filtered(rng.next_u64(), rng.between(4, 12), 0.55 + 0.35 * rng.random(), [path_graph(t)], 400)
        except BudgetExhausted:
            g = gen_fat_structure(rng.next_u64(), t - 1, max_class=2, extra=2, forbidden=[path_graph(t)])
        inp = _monitor_refinement(g, t)
    elif kind == "chordal":
        g = gen_chordal(rng.next_u64(), rng.between(3, 12), 0.15 + 0.4 * rng.random()).graph
        inp = _chordal_refinement(g)
    if inp is None:
        kind = "synthetic"
        g = random_connected_graph(rng, 3, 12, 0.2, 0.7)
        inp = _synthetic_refinement(rng, g)
    out.stats[f"source_{kind}"] += 1
    try:
        cert = refine_transversal(inp)
    except HypothesisError as exc:
        out.fail(f"trial {index} ({kind}): constructed input rejected: {exc}")
        return out
    _verify(out, inp.g, cert, None, f"trial {index} ({kind}) n={inp.g.n}")
    return out


# -- P_t-free ----------------------------------------------------------------------------

def _ptfree_graph(rng: SplitMix64, t: int, n_max: int) -> Graph:
    forbidden = [path_graph(t)]
    source = rng.below(4)
    if source == 0:
        n = rng.between(4, n_max)
        p = rng.choice((0.35, 0.5, 0.65)) if n <= 7 else 0.7 + 0.2 * rng.random()
        return gen_class_filtered(rng.next_u64(), n, p, forbidden, 4000)
    if source == 1:
        k = rng.between(2, t - 1)
        cyclic = k >= 4 and rng.chance(0.5)
        return gen_fat_structure(rng.next_u64(), k, cyclic, max_class=2, extra=rng.between(0, 3), forbidden=forbidden)
    if source == 2:
        base = gen_class_filtered(rng.next_u64(), rng.between(2, 5), 0.5, forbidden, 4000)
        g = gen_blowup(rng.next_u64(), base, max_module=max(1, n_max // max(base.n, 1)), forbidden=forbidden)
        if g.n <= n_max:
            return g
    base = cycle_graph(t - 1) if t - 1 >= 3 else path_graph(t - 1)
    return gen_blowup(rng.next_u64(), base, max_module=max(1, n_max // base.n), forbidden=forbidden)


def _trial_ptfree(t: int, n_max: int):
    def trial(seed: int, index: int) -> TrialOutcome:
        out = TrialOutcome()
        rng = SplitMix64(seed)
        try:
            g = _ptfree_graph(rng, t, n_max)
        except BudgetExhausted as exc:
            out.skipped = f"trial {index}: {exc}"
            return out
        if g.n > n_max:
            g = gen_class_filtered(rng.next_u64(), n_max, 0.85, [path_graph(t)], 4000)
        cert = ptfree_transversal(g, t)
        _verify(out, g, cert, t - 2, f"trial {index} P{t}-free n={g.n}")
        return out

    trial.__name__ = f"_trial_p{t}"
    return trial


_trial_p5 = _trial_ptfree(5, 12)
_trial_p6 = _trial_ptfree(6, 14)


# -- bull / chair ------------------------------------------------------------------------

def _trial_bullchair(seed: int, index: int) -> TrialOutcome:
    out = TrialOutcome()
    rng = SplitMix64(seed)
    forbidden = [bull(), chair()]
    source = index % 4
    try:
        if source == 0:
            n = rng.between(4, 12)
            p = 0.5 if n <= 6 else 0.75 + 0.15 * rng.random()
            g = gen_class_filtered(rng.next_u64(), n, p, forbidden, 4000)
        elif source == 1:
            # sparse samples reach every branch, including an uncovered six-vertex path
            g = gen_class_filtered(rng.next_u64(), rng.between(7, 10), 0.25 + 0.15 * rng.random(), forbidden, 50_000)
        elif source == 2:
            k = rng.between(6, 9)
            cyclic = k >= 8 and rng.chance(0.5)
            sub = rng.next_u64()
            try:
                g = gen_fat_structure(sub, k, cyclic, max_class=2 if k < 8 else 1, extra=rng.between(0, 1), forbidden=forbidden)
            except BudgetExhausted:
                # without extra vertices fat paths and cycles are always in the class
                g = gen_fat_structure(sub, k, cyclic, max_class=2 if k < 8 else 1, forbidden=forbidden)
        else:
            base = rng.choice((path_graph(6), path_graph(7), cycle_graph(5), cycle_graph(8)))
            g = gen_blowup(rng.next_u64(), base, max_module=2, forbidden=forbidden)
    except BudgetExhausted as exc:
        out.skipped = f"trial {index}: {exc}"
        return out
    cert = bullchair_transversal(g)
    _verify(out, g, cert, 5, f"trial {index} bull/chair n={g.n}")
    return out


# -- chordal and interval -----------------------------------------------------------------

def _chordal_checks(out: TrialOutcome, g: Graph, tag: str, extra_bound: int | None = None) -> None:
    if is_chordal(g) is None:
        out.fail(f"{tag}: generated graph is not chordal")
        return
    cert = chordal_refined_transversal(g)
    index_t = matched_clique_index(g)
    _verify(out, g, cert, index_t - 1, tag)
    if extra_bound is not None and len(cert) > extra_bound:
        out.fail(f"{tag}: size {len(cert)} exceeds {extra_bound}")
    out.stats[f"index_{index_t}"] += 1


def _trial_chordal(seed: int, index: int) -> TrialOutcome:
    out = TrialOutcome()
    rng = SplitMix64(seed)
    n = rng.between(2, 14)
    inst = gen_chordal(rng.next_u64(), n, 0.05 + 0.4 * rng.random(), rng.between(max(2, n // 2), 2 * n))
    if realize(inst.rep) != inst.graph:
        out.fail(f"trial {index}: representation does not realize the generated graph")
    _chordal_checks(out, inst.graph, f"trial {index} chordal n={n}")
    return out


def _trial_interval(seed: int, index: int) -> TrialOutcome:
    out = TrialOutcome()
    rng = SplitMix64(seed)
    n = rng.between(2, 14)
    inst = gen_interval(rng.next_u64(), n, span=rng.between(n, 4 * n))
    _chordal_checks(out, inst.graph, f"trial {index} interval n={n}", extra_bound=2)
    return out


# -- minimality ------------------------------------------------------------------------------

def _check_minimal(out: TrialOutcome, g: Graph, d: frozenset[int], target: int, tag: str) -> None:
    dm = to_mask(d)
    if not dominates_mask(g, dm, target):
        out.fail(f"{tag}: {sorted(d)} does not dominate the target")
        return
    for v in d:
        if dominates_mask(g, dm & ~(1 << v), target):
            out.fail(f"{tag}: {sorted(d)} still dominates without {v}")


def _trial_minimality(seed: int, index: int) -> TrialOutcome:
    out = TrialOutcome()
    rng = SplitMix64(seed)
    # random pool and target
    g = random_connected_graph(rng, 2, 14)
    pool = to_mask(v for v in range(g.n) if rng.chance(0.6)) or 1
    closed = pool | neighborhood_mask(g, pool)
    target = to_mask(v for v in iter_bits(closed) if rng.chance(0.7))
    d = minimal_dominating_subset(g, iter_bits(pool), iter_bits(target))
    _check_minimal(out, g, d, target, f"trial {index} random n={g.n}")
    # clique context: every member needs a private neighbour in the boundary
    inst = gen_chordal(rng.next_u64(), rng.between(3, 14), 0.1 + 0.4 * rng.random())
    h = inst.graph
    k = chordal_clique_transversal(h).transversal
    if to_mask(k) != h.all_mask:
        bd = component_profiles(h, k)[0].boundary
        bm = to_mask(bd)
        dd = minimal_dominating_subset(h, k, bd)
        _check_minimal(out, h, dd, bm, f"trial {index} chordal n={h.n}")
        ddm = to_mask(dd)
        for v in dd:
            others = ddm & ~(1 << v)
            private = bm & (h.adj(v) | 1 << v) & ~(others | neighborhood_mask(h, others))
            if not private:
                out.fail(f"trial {index} chordal: member {v} of {sorted(dd)} has no private neighbour")
        out.stats["clique_contexts"] += 1
    return out


# -- H-graphs -----------------------------------------------------------------------------------

def _trial_hgraph(seed: int, index: int) -> TrialOutcome:
    out = TrialOutcome()
    rng = SplitMix64(seed)
    host = HOST_NAMES[index % len(HOST_NAMES)]
    n = rng.between(2, 12)
    if host == "K2" and rng.chance(0.5):
        inst = gen_interval(rng.next_u64(), n)
    elif host == "K3" and rng.chance(0.5):
        inst = gen_circular_arc(rng.next_u64(), n)
    else:
        inst = gen_hgraph(rng.next_u64(), n, host, max_len=rng.between(1, 6), density=0.1 + 0.4 * rng.random())
    tag = f"trial {index} host={host} n={n} |V(H^phi)|={inst.rep.h_phi.n}"
    g = inst.graph
    if realize(inst.rep) != g:
        out.fail(f"{tag}: representation does not realize the generated graph")
    if not is_nice(inst.rep) or normalize_nice(inst.rep) != inst.rep:
        out.fail(f"{tag}: generated representation is not a normalization fixed point")
    cert, trace = extract_q(inst.rep)
    claims = verify_claims(trace, g)
    if not claims.ok:
        bad = [k for k in ("cliques", "q_meets_every_vx", "q_inside_s", "claim2", "s1", "s2", "theorem") if getattr(claims, k) is False]
        bad += [f"claim1[{x}]" for x, ok in claims.claim1.items() if not ok]
        out.fail(f"{tag}: failed {', '.join(bad)}")
    _verify(out, g, cert, None, tag)
    out.stats[f"host_{host}"] += 1
    out.stats[f"helly_{trace.helly_method}"] += 1
    out.stats["theorem_checked" if trace.theorem_ok is not None else "theorem_unchecked"] += 1
    if not trace.exact_width:
        out.stats["inexact_width"] += 1
    if inst.rep.h_phi.n > EXACT_LIMIT:
        out.stats["lifted_decomposition"] += 1
    return out


SUITES: dict[str, tuple[Callable[[int, int], TrialOutcome], int]] = {
    "oracle": (_trial_oracle, 500),
    "refine": (_trial_refine, 1000),
    "p5": (_trial_p5, 300),
    "p6": (_trial_p6, 300),
    "bullchair": (_trial_bullchair, 300),
    "chordal": (_trial_chordal, 500),
    "interval": (_trial_interval, 300),
    "minimality": (_trial_minimality, 300),
    "hgraph": (_trial_hgraph, 300),
}


def _run_one(args: tuple[str, int, int]) -> TrialOutcome:
    name, seed, index = args
    fn = SUITES[name][0]
    try:
        return fn(seed, index)
    except LptError as exc:
        # a construction that raises on an in-class instance is a violation
        out = TrialOutcome()
        out.fail(f"trial {index}: {type(exc).__name__}: {exc}")
        return out


def run_suite(name: str, trials: int | None = None, seed: int = 0, workers: int = 1) -> SuiteReport:
    """Run a suite; the report does not depend on ``workers``."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    trials = SUITES[name][1] if trials is None else trials
    jobs = [(name, s, i) for i, s in enumerate(trial_seeds(name, seed, trials))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [_run_one(job) for job in jobs]
    report = SuiteReport(name, seed, trials)
    for o in outcomes:
        if o.skipped is not None:
            report.skipped.append(o.skipped)
            continue
        report.checked += 1
        report.violations.extend(o.violations)
        report.stats.update(o.stats)
    return report
