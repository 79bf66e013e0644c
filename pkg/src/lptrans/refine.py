"""Shrinking a known longest path transversal using domination.

Given a transversal ``M``, a connected dominating set ``D`` of ``G[M]`` and a
set ``S ⊆ M`` dominating the attachment vertices of a path-maximal component
of ``G - M``, the union ``D ∪ S`` is again a transversal.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import HypothesisError
from .graph import (
    Graph,
    boundary_mask,
    component_masks,
    dominates_mask,
    from_mask,
    iter_bits,
    neighborhood_mask,
    to_mask,
)
from .oracle import DP_LIMIT, TransversalCertificate, is_transversal, longest_anchored_path_length

__all__ = [
    "ComponentProfile",
    "RefinementInput",
    "component_profiles",
    "path_maximal_component",
    "refine_transversal",
    "cds_transversal",
    "minimal_dominating_subset",
    "oracle_verify",
]


@dataclass(frozen=True)
class ComponentProfile:
    """A component of ``G - M``, its attachment set and its anchored path length.

    ``t_value`` is the length of a longest path inside the component with an
    endpoint in ``boundary`` (``None`` when the boundary is empty, which only
    happens for ``M = ∅``).
    """

    component: frozenset[int]
    t_value: int | None
    boundary: frozenset[int]


def _subset(g: Graph, x: Iterable[int], name: str) -> int:
    mask = to_mask(x)
    if mask >> g.n:
        raise HypothesisError(f"{name} is not a subset of V(G)", sorted(v for v in iter_bits(mask) if v >= g.n))
    return mask


def component_profiles(g: Graph, m: Iterable[int]) -> list[ComponentProfile]:
    """Profiles of the components of ``G - M``, best first.

    Sorted by decreasing ``t_value``; ties go to the smaller minimum vertex.
    """
    mm = _subset(g, m, "M")
    if len(component_masks(g, g.all_mask)) != 1:
        raise HypothesisError("graph must be connected")
    out = []
    for comp in component_masks(g, g.all_mask & ~mm):
        bd = boundary_mask(g, comp, mm)
        t = longest_anchored_path_length(g, iter_bits(comp), iter_bits(bd))
        out.append((comp, t, bd))
    out.sort(key=lambda item: (-(item[1] if item[1] is not None else -1), (item[0] & -item[0]).bit_length()))
    return [ComponentProfile(from_mask(c), t, from_mask(bd)) for c, t, bd in out]


def path_maximal_component(g: Graph, m: Iterable[int]) -> ComponentProfile | None:
    """The first profile of :func:`component_profiles`; ``None`` when ``M`` covers ``G``."""
    profiles = component_profiles(g, m)
    return profiles[0] if profiles else None


def oracle_verify(g: Graph, s: Iterable[int]) -> bool:
    """Oracle check when the graph is small enough for the DP, else ``False``."""
    if g.n > DP_LIMIT:
        return False
    return is_transversal(g, s)


@dataclass(frozen=True)
class RefinementInput:
    """Hypotheses of the refinement step.

    ``m_trusted`` lets the caller vouch for ``m`` being a transversal on
    graphs too large for the oracle. It is ignored when the oracle can decide.
    ``profile`` picks a path-maximal component when several tie; by default
    the first of :func:`component_profiles` is used.
    """

    g: Graph
    m: frozenset[int]
    d: frozenset[int]
    s: frozenset[int]
    m_trusted: bool = False
    profile: ComponentProfile | None = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("m", "d", "s"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    def check(self) -> ComponentProfile | None:
        """Raise :class:`HypothesisError` on the first violated hypothesis.

        Returns the path-maximal component used, or ``None`` if ``M = V(G)``.
        """
        g = self.g
        mm = _subset(g, self.m, "M")
        dm = _subset(g, self.d, "D")
        sm = _subset(g, self.s, "S")
        if len(component_masks(g, g.all_mask)) != 1:
            raise HypothesisError("G must be connected")
        if dm & ~mm:
            raise HypothesisError("D must be a subset of M", sorted(from_mask(dm & ~mm)))
        if sm & ~mm:
            raise HypothesisError("S must be a subset of M", sorted(from_mask(sm & ~mm)))
        if not dm:
            raise HypothesisError("D must be nonempty")
        if len(component_masks(g, dm)) != 1:
            raise HypothesisError("D must induce a connected subgraph", sorted(self.d))
        undominated = mm & ~(dm | neighborhood_mask(g, dm))
        if undominated:
            raise HypothesisError("D must dominate G[M]", min(iter_bits(undominated)))
        if g.n <= DP_LIMIT:
            if not is_transversal(g, self.m):
                raise HypothesisError("M must be a longest path transversal", sorted(self.m))
        elif not self.m_trusted:
            raise HypothesisError(f"M cannot be oracle-checked above {DP_LIMIT} vertices; pass m_trusted=True")
        profiles = component_profiles(g, self.m)
        profile = profiles[0] if profiles else None
        if self.profile is not None:
            if self.profile not in profiles or self.profile.t_value != profile.t_value:
                raise HypothesisError("chosen component is not path-maximal", sorted(self.profile.component))
            profile = self.profile
        if profile is not None:
            bd = to_mask(profile.boundary)
            gap = bd & ~(sm | neighborhood_mask(g, sm))
            if gap:
                raise HypothesisError(
                    "S must dominate the boundary of the path-maximal component", min(iter_bits(gap))
                )
        return profile


def refine_transversal(inp: RefinementInput) -> TransversalCertificate:
    """Check every hypothesis, then return ``D ∪ S`` as an oracle-verified certificate."""
    inp.check()
    out = inp.d | inp.s
    return TransversalCertificate(out, None, "refine", oracle_verify(inp.g, out))


def cds_transversal(g: Graph, d: Iterable[int]) -> TransversalCertificate:
    """A connected dominating set is itself a transversal."""
    dm = _subset(g, d, "D")
    if not dm or len(component_masks(g, dm)) != 1 or not dominates_mask(g, dm, g.all_mask):
        raise HypothesisError("D must be a connected dominating set of G", sorted(from_mask(dm)))
    out = from_mask(dm)
    return TransversalCertificate(out, None, "cds", oracle_verify(g, out))


def minimal_dominating_subset(g: Graph, pool: Iterable[int], target: Iterable[int]) -> frozenset[int]:
    """An inclusion-minimal ``D ⊆ pool`` dominating ``target``.

    Greedy cover (most new targets first, lowest id on ties), then a single
    pruning pass from the highest id down. One pass suffices: a vertex kept
    at its turn stays necessary as the set only shrinks afterwards.
    """
    pm = _subset(g, pool, "pool")
    tm = _subset(g, target, "target")
    reach = {v: g.adj(v) | 1 << v for v in iter_bits(pm)}
    coverable = 0
    for r in reach.values():
        coverable |= r
    if tm & ~coverable:
        raise HypothesisError("pool does not dominate target", min(iter_bits(tm & ~coverable)))
    chosen = 0
    left = tm
    while left:
        best = max(reach, key=lambda v: ((reach[v] & left).bit_count(), -v))
        chosen |= 1 << best
        left &= ~reach[best]
    for v in sorted(iter_bits(chosen), reverse=True):
        trial = chosen & ~(1 << v)
        if dominates_mask(g, trial, tm):
            chosen = trial
    return from_mask(chosen)
