"""Class membership tests and structured searches used by the pipelines."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import ClassMembershipError, HypothesisError, InternalContradiction
from .graph import (
    Graph,
    component_masks,
    from_mask,
    is_clique_mask,
    is_connected,
    is_induced_path,
    iter_bits,
    neighborhood_mask,
    to_mask,
)

__all__ = [
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "claw",
    "chair",
    "bull",
    "matched_clique",
    "PATTERNS",
    "contains_induced",
    "is_chordal",
    "find_hole",
    "chordal_maximal_cliques",
    "find_matched_clique",
    "matched_clique_index",
    "maximal_induced_path",
    "is_monitor",
    "induced_paths",
    "find_monitor_path",
]


# -- pattern catalogue -------------------------------------------------------

def path_graph(t: int) -> Graph:
    return Graph.from_edge_list(t, [(i, i + 1) for i in range(t - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycles need at least three vertices")
    return Graph.from_edge_list(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(t: int) -> Graph:
    return Graph.from_edge_list(t, [(i, j) for i in range(t) for j in range(i + 1, t)])


def claw() -> Graph:
    return Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])


def chair() -> Graph:
    # claw 0;1,2,3 with the edge 0-3 subdivided by 4
    return Graph.from_edge_list(5, [(0, 1), (0, 2), (0, 4), (4, 3)])


def bull() -> Graph:
    # P4 0-1-2-3 plus 4 on both middle vertices
    return Graph.from_edge_list(5, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)])


def matched_clique(t: int) -> Graph:
    """K_t joined to an independent t-set by a perfect matching.

    Vertices ``0..t-1`` form the clique; ``t+i`` is matched to ``i``.
    """
    edges = [(i, j) for i in range(t) for j in range(i + 1, t)]
    edges += [(i, t + i) for i in range(t)]
    return Graph.from_edge_list(2 * t, edges)


PATTERNS = {
    **{f"P{t}": path_graph(t) for t in range(1, 8)},
    **{f"C{k}": cycle_graph(k) for k in range(3, 9)},
    **{f"K{t}": complete_graph(t) for t in range(1, 7)},
    **{f"K{t}xK{t}": matched_clique(t) for t in range(1, 7)},
    "claw": claw(),
    "chair": chair(),
    "bull": bull(),
}


# -- induced subgraph search ---------------------------------------------------

def _search_order(pattern: Graph) -> list[int]:
    """Most-constrained-first order: next vertex has most edges back into the prefix."""
    order: list[int] = []
    placed = 0
    left = set(range(pattern.n))
    while left:
        best = min(left, key=lambda p: (-(pattern.adj(p) & placed).bit_count(), -pattern.degree(p), p))
        order.append(best)
        placed |= 1 << best
        left.remove(best)
    return order


def contains_induced(g: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """An induced copy of ``pattern`` in ``g``, or ``None``.

    The result maps pattern vertex ``i`` to ``result[i]``. Both adjacency and
    non-adjacency are preserved. The search is plain backtracking with
    bitmask candidate filtering and is deterministic.
    """
    k = pattern.n
    if k == 0:
        return ()
    if k > g.n:
        return None
    order = _search_order(pattern)
    full = g.all_mask
    degree_ok = []
    for p in range(k):
        need = pattern.degree(p)
        degree_ok.append(to_mask(v for v in range(g.n) if g.degree(v) >= need))
    image = [0] * k

    def extend(i: int, used: int) -> bool:
        if i == k:
            return True
        p = order[i]
        cand = full & ~used & degree_ok[p]
        prow = pattern.adj(p)
        for q in order[:i]:
            row = g.adj(image[q])
            cand &= row if prow >> q & 1 else ~row
            if not cand:
                return False
        for c in iter_bits(cand):
            image[p] = c
            if extend(i + 1, used | 1 << c):
                return True
        return False

    return tuple(image) if extend(0, 0) else None


# -- chordality ----------------------------------------------------------------

def _lex_bfs(g: Graph) -> list[int]:
    labels: dict[int, list[int]] = {v: [] for v in range(g.n)}
    order = []
    for step in range(g.n, 0, -1):
        v = max(labels, key=lambda u: (labels[u], -u))
        order.append(v)
        del labels[v]
        for u in iter_bits(g.adj(v)):
            if u in labels:
                labels[u].append(step)
    return order


def is_chordal(g: Graph) -> list[int] | None:
    """A perfect elimination ordering if ``g`` is chordal, else ``None``.

    The ordering is the reverse of a lexicographic BFS; every vertex's
    neighbours later in the ordering form a clique.
    """
    peo = _lex_bfs(g)[::-1]
    later = 0
    for v in reversed(peo):
        if not is_clique_mask(g, g.adj(v) & later):
            return None
        later |= 1 << v
    return peo


def chordal_maximal_cliques(g: Graph, peo: Sequence[int] | None = None) -> list[frozenset[int]]:
    """Maximal cliques of a chordal graph (at most n of them), sorted by member lists.

    Candidates are ``{v}`` plus the neighbours of ``v`` later in the
    elimination ordering; the maximal candidates are exactly the maximal cliques.
    """
    if peo is None:
        peo = is_chordal(g)
        if peo is None:
            raise ClassMembershipError("graph is not chordal", find_hole(g))
    pos = {v: i for i, v in enumerate(peo)}
    candidates = []
    for v in peo:
        later = to_mask(u for u in iter_bits(g.adj(v)) if pos[u] > pos[v])
        candidates.append(later | 1 << v)
    out = []
    for i, c in enumerate(candidates):
        if not any(j != i and c & d == c and c != d for j, d in enumerate(candidates)):
            if c not in out:
                out.append(c)
    return sorted((from_mask(c) for c in out), key=sorted)


def find_hole(g: Graph) -> tuple[int, ...] | None:
    """An induced cycle on four or more vertices, shortest first."""
    for k in range(4, g.n + 1):
        hit = contains_induced(g, cycle_graph(k))
        if hit is not None:
            return hit
    return None


# -- K_t matched to an independent t-set ------------------------------------

def find_matched_clique(g: Graph, t: int) -> tuple[int, ...] | None:
    """An induced K_t⋈K̄_t as a tuple in :func:`matched_clique` vertex order.

    Clique vertices are chosen in increasing id order, which removes the
    t! relabelings of the pattern from the search.
    """
    if t == 0:
        return ()
    if 2 * t > g.n:
        return None
    clique = [0] * t
    match = [0] * t

    def extend(i: int, used: int, lo: int, common: int, outer_forbid: int) -> bool:
        # common: vertices adjacent to all chosen clique vertices
        # outer_forbid: vertices adjacent to some chosen matched vertex, or chosen
        if i == t:
            return True
        for d in iter_bits(common & ~used & ~((1 << lo) - 1)):
            drow = g.adj(d)
            # d must avoid earlier matched vertices
            if any(drow >> match[j] & 1 for j in range(i)):
                continue
            # its partner: adjacent to d, to no other clique vertex, to no matched vertex
            cand = drow & ~used & ~(1 << d) & ~outer_forbid
            for c in clique[:i]:
                cand &= ~g.adj(c)
            for e in iter_bits(cand):
                clique[i], match[i] = d, e
                if extend(i + 1, used | 1 << d | 1 << e, d + 1, common & drow, outer_forbid | g.adj(e) | 1 << e):
                    return True
        return False

    if extend(0, 0, 0, g.all_mask, 0):
        return tuple(clique) + tuple(match)
    return None


def matched_clique_index(g: Graph) -> int:
    """Smallest ``t`` with no induced K_t⋈K̄_t in ``g``."""
    t = 1
    while t <= g.n // 2 and find_matched_clique(g, t) is not None:
        t += 1
    return t


# -- induced paths and monitors ------------------------------------------------

def maximal_induced_path(g: Graph, seed: Sequence[int]) -> tuple[int, ...]:
    """Grow an induced path until neither end can be extended.

    Extension prefers the tail, then the head, and always the lowest-id
    admissible neighbour.
    """
    path = list(seed)
    if not is_induced_path(g, path):
        raise HypothesisError("seed is not an induced path", tuple(path))
    while True:
        pm = to_mask(path)
        grown = False
        for at_tail in (True, False):
            end = path[-1] if at_tail else path[0]
            rest = pm & ~(1 << end)
            cand = g.adj(end) & ~pm & ~neighborhood_mask(g, rest)
            if cand:
                u = (cand & -cand).bit_length() - 1
                if at_tail:
                    path.append(u)
                else:
                    path.insert(0, u)
                grown = True
                break
        if not grown:
            return tuple(path)


def monitor_watchers(g: Graph, m: int) -> list[tuple[int, int | None]]:
    """Each component of ``g - m`` with its lowest-id vertex of ``m`` complete to it."""
    out = []
    for comp in component_masks(g, g.all_mask & ~m):
        watcher = next((w for w in iter_bits(m) if not comp & ~g.adj(w)), None)
        out.append((comp, watcher))
    return out


def is_monitor(g: Graph, m: Iterable[int]) -> bool:
    """True iff every component of ``g - m`` has a vertex of ``m`` complete to it."""
    return all(w is not None for _, w in monitor_watchers(g, to_mask(m)))


def induced_paths(g: Graph, size: int) -> list[tuple[int, ...]]:
    """All induced paths on ``size`` vertices, one orientation each, sorted."""
    out = []

    def grow(path: list[int], pm: int, forbid: int) -> None:
        if len(path) == size:
            if size == 1 or path[0] < path[-1]:
                out.append(tuple(path))
            return
        last = path[-1]
        for u in iter_bits(g.adj(last) & ~pm & ~forbid):
            grow(path + [u], pm | 1 << u, forbid | g.adj(last))

    for v in range(g.n):
        grow([v], 1 << v, 0)
    out.sort()
    return out


def find_monitor_path(g: Graph, t: int) -> tuple[int, ...]:
    """An induced path X on at most ``t-3`` vertices whose closed neighbourhood is a monitor.

    Connected P_t-free graphs always have one (t in 4..6). The search goes
    through induced paths by size, then lexicographically.
    """
    if t not in (4, 5, 6):
        raise ValueError("t must be 4, 5 or 6")
    if not is_connected(g):
        raise HypothesisError("graph must be connected")
    witness = contains_induced(g, path_graph(t))
    if witness is not None:
        raise ClassMembershipError(f"graph contains an induced P{t}", witness)
    for size in range(1, t - 2):
        for path in induced_paths(g, size):
            pm = to_mask(path)
            if is_monitor(g, iter_bits(pm | neighborhood_mask(g, pm))):
                return path
    raise InternalContradiction(f"no induced path on <= {t - 3} vertices has a monitor neighbourhood")
