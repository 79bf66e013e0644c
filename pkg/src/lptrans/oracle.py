"""Exact ground truth for longest paths at desk scale.

Everything here is exact. Above the configured limits the functions raise
instead of approximating.

The core table is ``reach[mask]``, the set (bitmask) of vertices ``v`` such
that ``g[mask]`` has a Hamiltonian path ending at ``v``. It is filled one
popcount layer at a time with numpy; a path on ``k+1`` vertices exists iff
some layer-``k+1`` entry is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from collections.abc import Iterable

import numpy as np

from .errors import HypothesisError, PathOverflowError, SizeLimitError
from .graph import Graph, from_mask, induced, iter_bits, to_mask

DP_LIMIT = 20
ENUM_LIMIT = 16
PATH_CAP = 1_000_000

__all__ = [
    "DP_LIMIT",
    "ENUM_LIMIT",
    "PATH_CAP",
    "LongestPathReport",
    "TransversalCertificate",
    "reach_table",
    "longest_path_length",
    "enumerate_longest_paths",
    "count_longest_paths",
    "naive_longest_paths",
    "is_transversal",
    "exact_lpt",
    "longest_anchored_path_length",
    "on_some_longest_path",
]


@dataclass(frozen=True)
class LongestPathReport:
    """All longest paths of a graph, one orientation each, sorted."""

    length: int
    paths: tuple[tuple[int, ...], ...]

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(p) for p in self.paths)

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class TransversalCertificate:
    """A vertex set claimed to meet every longest path, plus its provenance.

    ``method`` is one of ``exact``, ``refine``, ``cds``, ``pt_free``,
    ``bull_chair``, ``chordal``, ``hgraph``. ``branch`` records which case of
    a pipeline produced the set, when the pipeline has cases.
    """

    transversal: frozenset[int]
    bound_claimed: int | None
    method: str
    verified: bool
    branch: str | None = None

    def __len__(self) -> int:
        return len(self.transversal)


@lru_cache(maxsize=None)
def _layers(n: int) -> tuple[np.ndarray, ...]:
    masks = np.arange(1 << n, dtype=np.int64)
    pc = _popcount(n)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(n + 2))
    return tuple(masks[order[bounds[k]: bounds[k + 1]]] for k in range(n + 1))


def _require(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise SizeLimitError(what, g.n, limit)
    if g.n == 0:
        raise HypothesisError("the empty graph has no paths")


@lru_cache(maxsize=64)
def _reach(g: Graph) -> tuple[np.ndarray, int]:
    n = g.n
    layers = _layers(n)
    reach = np.zeros(1 << n, dtype=np.int64)
    singles = np.int64(1) << np.arange(n, dtype=np.int64)
    reach[singles] = singles
    adj = np.array(g.rows, dtype=np.int64)
    longest = 0
    for k in range(2, n + 1):
        masks = layers[k]
        grew = False
        for v in range(n):
            bit = np.int64(1 << v)
            sel = masks[(masks & bit) != 0]
            ok = (reach[sel ^ bit] & adj[v]) != 0
            if ok.any():
                reach[sel[ok]] |= bit
                grew = True
        if not grew:
            break
        longest = k - 1
    reach.flags.writeable = False
    return reach, longest


def reach_table(g: Graph, limit: int = DP_LIMIT) -> np.ndarray:
    """Read-only ``reach[mask]`` endpoint table (see module docstring)."""
    _require(g, limit, "subset DP")
    return _reach(g)[0]


def longest_path_length(g: Graph, limit: int = DP_LIMIT) -> int:
    """Number of edges on a longest path of ``g``."""
    _require(g, limit, "subset DP")
    return _reach(g)[1]


def on_some_longest_path(g: Graph, limit: int = DP_LIMIT) -> frozenset[int]:
    """Vertices lying on at least one longest path."""
    _require(g, limit, "subset DP")
    reach, length = _reach(g)
    top = _layers(g.n)[length + 1]
    hit = top[reach[top] != 0]
    return from_mask(int(np.bitwise_or.reduce(hit)) if len(hit) else 0)


def enumerate_longest_paths(g: Graph, limit: int = ENUM_LIMIT, cap: int = PATH_CAP) -> LongestPathReport:
    """Every longest path, each stored once in the orientation with the smaller first vertex.

    Paths are rebuilt backwards from the DP table, so every branch of the
    search ends in a longest path and nothing is explored in vain.
    """
    _require(g, limit, "longest path enumeration")
    reach, length = _reach(g)
    top = _layers(g.n)[length + 1]
    top = np.sort(top[reach[top] != 0])
    rows = g.rows
    found: list[tuple[int, ...]] = []

    def extend(mask: int, end: int, suffix: list[int]) -> None:
        suffix.append(end)
        if mask == 1 << end:
            if length == 0 or end < suffix[0]:
                found.append(tuple(reversed(suffix)))
                if len(found) > cap:
                    raise PathOverflowError(cap)
        else:
            rest = mask ^ (1 << end)
            for u in iter_bits(int(reach[rest]) & rows[end]):
                extend(rest, u, suffix)
        suffix.pop()

    for mask in top.tolist():
        for end in iter_bits(int(reach[mask])):
            extend(mask, end, [])
    found.sort()
    return LongestPathReport(length, tuple(found))


def count_longest_paths(g: Graph, limit: int = ENUM_LIMIT) -> int:
    """Number of longest paths (one orientation each), without listing them.

    ``count[mask, v]`` counts Hamiltonian paths of ``g[mask]`` ending at ``v``;
    the table has ``2**n * n`` entries, hence the tighter default limit.
    """
    _require(g, limit, "longest path counting")
    n = g.n
    _, length = _reach(g)
    if length == 0:
        return n
    layers = _layers(n)
    count = np.zeros((1 << n, n), dtype=np.int64)
    for v in range(n):
        count[1 << v, v] = 1
    nbrs = [np.array(sorted(g.neighbors(v)), dtype=np.int64) for v in range(n)]
    for k in range(2, length + 2):
        masks = layers[k]
        for v in range(n):
            if not len(nbrs[v]):
                continue
            bit = np.int64(1 << v)
            sel = masks[(masks & bit) != 0]
            count[sel, v] = count[(sel ^ bit)[:, None], nbrs[v][None, :]].sum(axis=1)
    total = int(count[layers[length + 1]].sum())
    return total // 2


def naive_longest_paths(g: Graph) -> LongestPathReport:
    """Plain exhaustive DFS over all simple paths; shares no code with the DP.

    Only meant as an independent cross-check on small graphs.
    """
    if g.n == 0:
        raise HypothesisError("the empty graph has no paths")
    best = -1
    found: set[tuple[int, ...]] = set()
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]

    def dfs(path: list[int], used: set[int]) -> None:
        nonlocal best, found
        length = len(path) - 1
        if length > best:
            best, found = length, set()
        if length == best:
            p = tuple(path)
            found.add(min(p, p[::-1]))
        for u in nbrs[path[-1]]:
            if u not in used:
                used.add(u)
                path.append(u)
                dfs(path, used)
                path.pop()
                used.discard(u)

    for v in range(g.n):
        dfs([v], {v})
    return LongestPathReport(best, tuple(sorted(found)))


def is_transversal(g: Graph, s: Iterable[int], method: str = "dp", limit: int | None = None) -> bool:
    """True iff every longest path of ``g`` contains a vertex of ``s``.

    ``method="dp"`` asks whether ``g - s`` still has a path as long as the
    longest path of ``g``. ``method="enumerate"`` checks the explicit path
    list. Both are exact and agree.
    """
    sm = to_mask(s)
    if sm >> g.n:
        raise HypothesisError("transversal candidate is not a subset of V(G)")
    if method == "enumerate":
        report = enumerate_longest_paths(g, limit=limit or ENUM_LIMIT)
        return all(pm & sm for pm in report.masks)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    limit = limit or DP_LIMIT
    length = longest_path_length(g, limit)
    rest = g.all_mask & ~sm
    if not rest:
        return True
    return longest_path_length(induced(g, iter_bits(rest)), limit) < length


def exact_lpt(g: Graph, limit: int = ENUM_LIMIT, cap: int = PATH_CAP) -> tuple[int, frozenset[int]]:
    """Minimum longest path transversal size and a witness.

    Iterative deepening over the size ``k``; each level is a branch-and-bound
    hitting-set search that branches on the vertices of the first longest
    path not yet hit, most frequent vertices first.
    """
    report = enumerate_longest_paths(g, limit=limit, cap=cap)
    masks = report.masks
    counts = [0] * g.n
    for pm in masks:
        for v in iter_bits(pm):
            counts[v] += 1
    branch_order = {pm: sorted(iter_bits(pm), key=lambda v: (-counts[v], v)) for pm in set(masks)}

    def search(chosen: int, budget: int, start: int) -> int | None:
        i = start
        while i < len(masks) and masks[i] & chosen:
            i += 1
        if i == len(masks):
            return chosen
        if budget == 0:
            return None
        for v in branch_order[masks[i]]:
            hit = search(chosen | 1 << v, budget - 1, i + 1)
            if hit is not None:
                return hit
        return None

    k = 1
    while True:
        hit = search(0, k, 0)
        if hit is not None:
            return k, from_mask(hit)
        k += 1


def longest_anchored_path_length(
    g: Graph, region: Iterable[int], anchors: Iterable[int], limit: int = DP_LIMIT
) -> int | None:
    """Longest path of ``g[region]`` with an endpoint in ``anchors``.

    Returns ``None`` when ``anchors`` is empty (no such path exists).
    """
    rm, am = to_mask(region), to_mask(anchors)
    if not rm:
        raise HypothesisError("region must be nonempty")
    if am & ~rm:
        raise HypothesisError("anchors must lie inside the region", sorted(from_mask(am & ~rm)))
    if not am:
        return None
    sub = induced(g, iter_bits(rm))
    local = to_mask(i for i, v in enumerate(sub.origin) if am >> v & 1)
    reach = reach_table(sub, limit)
    pc = _popcount(sub.n)
    hit = (reach & local) != 0
    return int(pc[hit].max()) - 1


@lru_cache(maxsize=None)
def _popcount(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pc[1 << i: 1 << (i + 1)] = pc[: 1 << i] + 1
    pc.flags.writeable = False
    return pc
