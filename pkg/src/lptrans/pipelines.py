"""Class-specific transversal constructions.

Each pipeline checks class membership, builds a transversal through the
refinement step and returns an oracle-verified certificate whose
``bound_claimed`` is the class bound.
"""

from __future__ import annotations

from dataclasses import replace
from itertools import combinations

from .errors import ClassMembershipError, HypothesisError, InternalContradiction, SizeLimitError
from .graph import Graph, component_masks, from_mask, iter_bits, neighborhood_mask, to_mask
from .oracle import DP_LIMIT, TransversalCertificate, is_transversal
from .recognizers import (
    bull,
    chair,
    chordal_maximal_cliques,
    contains_induced,
    find_hole,
    find_monitor_path,
    is_chordal,
    matched_clique_index,
    maximal_induced_path,
    path_graph,
)
from .refine import (
    RefinementInput,
    cds_transversal,
    component_profiles,
    minimal_dominating_subset,
    refine_transversal,
)

__all__ = [
    "ptfree_transversal",
    "bullchair_transversal",
    "chordal_clique_transversal",
    "chordal_refined_transversal",
]


def _connected_or_raise(g: Graph) -> None:
    if g.n == 0 or len(component_masks(g, g.all_mask)) != 1:
        raise HypothesisError("graph must be connected and nonempty")


def _tiny(g: Graph, method: str, bound: int | None) -> TransversalCertificate | None:
    # K1 and K2: {0} lies on every longest path
    if g.n <= 2:
        return TransversalCertificate(frozenset({0}), bound, method, is_transversal(g, [0]), "trivial")
    return None


def _watcher(g: Graph, m: int, comp: frozenset[int]) -> int:
    cm = to_mask(comp)
    for w in iter_bits(m):
        if not cm & ~g.adj(w):
            return w
    raise InternalContradiction(f"no vertex of the monitor is complete to component {sorted(comp)}")


def ptfree_transversal(g: Graph, t: int) -> TransversalCertificate:
    """Transversal of size at most ``t-2`` for a connected P_t-free graph, t in {5, 6}.

    Take an induced path ``X`` whose closed neighbourhood ``N`` is a monitor.
    ``N`` is a connected dominating set, ``X`` dominates ``G[N]`` and the
    monitor vertex ``w`` complete to a path-maximal component dominates its
    boundary, so ``X ∪ {w}`` is a transversal.
    """
    if t not in (5, 6):
        raise ValueError("t must be 5 or 6")
    _connected_or_raise(g)
    tiny = _tiny(g, "pt_free", t - 2)
    if tiny is not None:
        return tiny
    x = find_monitor_path(g, t)
    xm = to_mask(x)
    nm = xm | neighborhood_mask(g, xm)
    if nm == g.all_mask:
        cert = cds_transversal(g, x)
        return replace(cert, method="pt_free", bound_claimed=t - 2, branch="cds")
    profile = component_profiles(g, iter_bits(nm))[0]
    w = _watcher(g, nm, profile.component)
    cert = refine_transversal(RefinementInput(g, from_mask(nm), frozenset(x), frozenset({w})))
    return replace(cert, method="pt_free", bound_claimed=t - 2, branch="refine")


def _check_bull_chair_free(g: Graph) -> None:
    for name, pattern in (("bull", bull()), ("chair", chair())):
        hit = contains_induced(g, pattern)
        if hit is not None:
            raise ClassMembershipError(f"graph contains an induced {name}", hit)


def _pair_candidates(g: Graph):
    seen = set()
    for w in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        for x in iter_bits(g.adj(w)):
            pair = (min(w, x), max(w, x))
            if pair not in seen:
                seen.add(pair)
                yield pair
    for pair in combinations(range(g.n), 2):
        if pair not in seen:
            yield pair


def bullchair_transversal(g: Graph) -> TransversalCertificate:
    """Transversal of size at most 5 for a connected (bull, chair)-free graph.

    Branches (recorded in ``branch``):

    ``a``
        no induced P6: the P6-free pipeline, size at most 4.
    ``b1``
        the maximal induced path ``Q`` grown from the first induced P6 has six
        vertices: ``D = {q2..q5, w}`` refines the monitor ``N[Q]``.
    ``b1-cover``
        as ``b1`` but ``N[Q] = V(G)``, so no component exists; ``q1..q5``
        is then a connected dominating set (a vertex seeing only ``q6``
        would extend ``Q``).
    ``b2``
        ``Q`` has seven or more vertices: a transversal of size two exists
        and is found by oracle-certified search over vertex pairs.
    """
    _connected_or_raise(g)
    _check_bull_chair_free(g)
    tiny = _tiny(g, "bull_chair", 5)
    if tiny is not None:
        return tiny
    p6 = contains_induced(g, path_graph(6))
    if p6 is None:
        cert = ptfree_transversal(g, 6)
        return replace(cert, method="bull_chair", bound_claimed=5, branch="a")
    q = maximal_induced_path(g, p6)
    if len(q) == 6:
        qm = to_mask(q)
        nm = qm | neighborhood_mask(g, qm)
        if nm == g.all_mask:
            cert = cds_transversal(g, q[:5])
            if not cert.verified:
                cert = cds_transversal(g, q)
            return replace(cert, method="bull_chair", bound_claimed=5, branch="b1-cover")
        profile = component_profiles(g, iter_bits(nm))[0]
        w = _watcher(g, nm, profile.component)
        d = frozenset(q[1:5]) | {w}
        cert = refine_transversal(RefinementInput(g, from_mask(nm), d, frozenset({w})))
        return replace(cert, method="bull_chair", bound_claimed=5, branch="b1")
    if g.n > DP_LIMIT:
        raise SizeLimitError("certified pair search", g.n, DP_LIMIT)
    for pair in _pair_candidates(g):
        if is_transversal(g, pair):
            return TransversalCertificate(frozenset(pair), 5, "bull_chair", True, "b2")
    raise InternalContradiction(f"maximal induced path on {len(q)} vertices but no transversal pair")


def _chordal_peo(g: Graph) -> list[int]:
    _connected_or_raise(g)
    peo = is_chordal(g)
    if peo is None:
        raise ClassMembershipError("graph is not chordal", find_hole(g))
    return peo


def chordal_clique_transversal(g: Graph) -> TransversalCertificate:
    """The first maximal clique (in sorted order) that the oracle accepts as a transversal."""
    peo = _chordal_peo(g)
    if g.n > DP_LIMIT:
        raise SizeLimitError("clique verification", g.n, DP_LIMIT)
    for k in chordal_maximal_cliques(g, peo):
        if is_transversal(g, k):
            return TransversalCertificate(k, None, "chordal", True, "clique")
    raise InternalContradiction("no maximal clique of a connected chordal graph is a transversal")


def chordal_refined_transversal(g: Graph) -> TransversalCertificate:
    """Transversal of size at most ``t-1`` for a connected chordal K_t⋈K̄_t-free graph.

    A minimal ``D ⊆ K`` dominating the boundary of a path-maximal component
    of ``G - K`` dominates the clique ``K`` too, so refinement applies with
    ``D = S``. The claimed bound uses the smallest such ``t``.
    """
    clique = chordal_clique_transversal(g)
    bound = matched_clique_index(g) - 1
    k = clique.transversal
    km = to_mask(k)
    if km == g.all_mask:
        v = frozenset({min(k)})
        if is_transversal(g, v):
            return TransversalCertificate(v, bound, "chordal", True, "complete")
        return replace(clique, bound_claimed=bound, branch="complete")
    profile = component_profiles(g, k)[0]
    d = minimal_dominating_subset(g, k, profile.boundary)
    cert = refine_transversal(RefinementInput(g, k, d, d))
    return replace(cert, method="chordal", bound_claimed=bound, branch="refine")
