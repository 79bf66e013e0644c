"""Transversals of H-graphs from a tree decomposition of the subdivided host.

An :class:`HRepresentation` places every vertex of ``G`` on a connected set
(its segment) of a subdivision ``H^Φ`` of a host ``H``. :func:`extract_q`
turns a representation into a transversal whose size depends on ``H`` only:

1. :func:`helly_bag` finds a decomposition node ``t`` whose bag's owners
   meet every longest path;
2. :func:`intermediate_graph` keeps ``V(H) ∪ X(t)`` and contracts the rest;
3. for each bag vertex ``x``, each kept vertex ``a`` sharing an owner with
   ``x`` and each edge ``a→b`` of the intermediate graph, the owner of ``x``
   and ``a`` reaching furthest towards ``b`` is selected.
"""

from __future__ import annotations

import json
import os
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Union

from .errors import GraphFormatError, HypothesisError, InternalContradiction
from .graph import Graph, boundary_mask, component_masks, from_mask, is_clique_mask, iter_bits, to_mask
from .oracle import (
    DP_LIMIT,
    ENUM_LIMIT,
    TransversalCertificate,
    count_longest_paths,
    enumerate_longest_paths,
    is_transversal,
)
from .treewidth import (
    TreeDecomposition,
    decomposition_from_order,
    elimination_order,
    exact_decomposition,
)

EXACT_LIMIT = 25
HELLY_PATH_CAP = 200_000

__all__ = [
    "HRepresentation",
    "IntermediateGraph",
    "ExtractionTrace",
    "ClaimReport",
    "realize",
    "normalize_nice",
    "is_nice",
    "decompose",
    "helly_bag",
    "intermediate_graph",
    "reach",
    "extract_q",
    "verify_claims",
    "load_representation",
    "parse_representation",
    "dump_representation",
]


def _edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class HRepresentation:
    """Host ``h``, subdivision lengths and one segment per vertex of ``G``.

    ``lengths[(a, b)]`` (with ``a < b``) is the number of edges on the path
    replacing host edge ``ab``; missing edges default to 1. Vertices of
    ``h_phi`` are numbered host vertices first, then the internal vertices of
    each host edge in sorted edge order, counted from ``a``. ``phi[v]`` is the
    segment of vertex ``v`` of ``G`` as a set of ``h_phi`` ids.
    """

    h: Graph
    lengths: Mapping[tuple[int, int], int]
    phi: tuple[frozenset[int], ...]
    h_phi: Graph = field(init=False)
    labels: tuple[str, ...] = field(init=False)
    edge_paths: Mapping[tuple[int, int], tuple[int, ...]] = field(init=False)

    def __post_init__(self):
        if self.h.n < 2 or len(component_masks(self.h, self.h.all_mask)) != 1:
            raise HypothesisError("host must be connected with at least two vertices")
        lengths = {}
        for (a, b), ell in dict(self.lengths).items():
            key = _edge_key(a, b)
            if not self.h.has_edge(*key):
                raise HypothesisError("subdivision names a non-edge of the host", key)
            if ell < 1:
                raise HypothesisError("subdivided paths need length at least 1", key)
            lengths[key] = ell
        labels = [f"v{i}" for i in range(self.h.n)]
        edges = []
        paths = {}
        for a, b in self.h.edges():
            ell = lengths.setdefault((a, b), 1)
            seq = [a]
            for k in range(1, ell):
                seq.append(len(labels))
                labels.append(f"e{a}-{b}/{k}")
            seq.append(b)
            edges.extend(zip(seq, seq[1:]))
            paths[(a, b)] = tuple(seq)
            paths[(b, a)] = tuple(reversed(seq))
        object.__setattr__(self, "lengths", dict(sorted(lengths.items())))
        object.__setattr__(self, "phi", tuple(frozenset(s) for s in self.phi))
        object.__setattr__(self, "h_phi", Graph.from_edge_list(len(labels), edges))
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "edge_paths", paths)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HRepresentation):
            return NotImplemented
        return self.h == other.h and self.lengths == other.lengths and self.phi == other.phi

    @property
    def n(self) -> int:
        return len(self.phi)

    def owners(self, x: int) -> frozenset[int]:
        """``V_x``: vertices of ``G`` whose segment contains ``x``."""
        return frozenset(v for v, seg in enumerate(self.phi) if x in seg)

    def validate(self) -> None:
        for v, seg in enumerate(self.phi):
            if not seg:
                raise HypothesisError("empty segment", v)
            if any(not 0 <= x < self.h_phi.n for x in seg):
                raise HypothesisError("segment leaves the subdivided host", v)
            if len(component_masks(self.h_phi, to_mask(seg))) != 1:
                raise HypothesisError("segment is not connected", v)


def realize(rep: HRepresentation) -> Graph:
    """The intersection graph of the segments."""
    rep.validate()
    masks = [to_mask(s) for s in rep.phi]
    edges = [(u, v) for u in range(len(masks)) for v in range(u + 1, len(masks)) if masks[u] & masks[v]]
    return Graph.from_edge_list(len(masks), edges)


# -- niceness -------------------------------------------------------------------

def _uncovered(rep: HRepresentation) -> tuple[list[int], list[tuple[int, int]]]:
    covered = 0
    for seg in rep.phi:
        covered |= to_mask(seg)
    verts = [x for x in range(rep.h_phi.n) if not covered >> x & 1]
    edges = [(x, y) for x, y in rep.h_phi.edges() if not any(x in s and y in s for s in rep.phi)]
    return verts, edges


def is_nice(rep: HRepresentation) -> bool:
    verts, edges = _uncovered(rep)
    return not verts and not edges


def _rebuild(rep: HRepresentation, drop: set[int], merge: dict[int, int]) -> HRepresentation:
    """Rebuild with internal vertices in ``drop`` removed and ``merge`` applied to segments."""
    lengths = {}
    remap: dict[int, int] = {x: x for x in range(rep.h.n)}
    nxt = rep.h.n
    for a, b in rep.h.edges():
        seq = rep.edge_paths[(a, b)]
        kept = [x for x in seq[1:-1] if x not in drop and x not in merge]
        lengths[(a, b)] = len(kept) + 1
        for x in kept:
            remap[x] = nxt
            nxt += 1
    phi = []
    for seg in rep.phi:
        phi.append(frozenset(remap[merge.get(x, x)] for x in seg if x not in drop))
    return HRepresentation(rep.h, lengths, tuple(phi))


def normalize_nice(rep: HRepresentation) -> HRepresentation:
    """Make every vertex and edge of ``h_phi`` covered by some segment.

    Uncovered internal vertices are contracted away. An uncovered edge is
    contracted only when that cannot create new intersections, i.e. every
    segment at one end already meets every segment at the other end. Host
    vertices that stay uncovered, and edges that cannot be contracted
    safely, are rejected with :class:`HypothesisError`.
    """
    rep.validate()
    while True:
        verts, edges = _uncovered(rep)
        if not verts and not edges:
            return rep
        internal = [x for x in verts if x >= rep.h.n]
        if internal:
            rep = _rebuild(rep, set(internal), {})
            continue
        if verts:
            raise HypothesisError("host vertex is covered by no segment", rep.labels[verts[0]])
        x, y = edges[0]
        if x < rep.h.n and y < rep.h.n:
            raise HypothesisError("uncovered host edge cannot be contracted", (rep.labels[x], rep.labels[y]))
        at_x = [to_mask(s) for s in rep.phi if x in s]
        at_y = [to_mask(s) for s in rep.phi if y in s]
        if not all(a & b for a in at_x for b in at_y):
            raise HypothesisError(
                "contracting the uncovered edge would add intersections", (rep.labels[x], rep.labels[y])
            )
        keep, gone = (x, y) if x < y else (y, x)  # host vertices have the smallest ids
        phi = tuple(frozenset((s - {gone}) | ({keep} if gone in s else set())) for s in rep.phi)
        rep = _rebuild(HRepresentation(rep.h, rep.lengths, phi), set(), {gone: keep})


# -- decomposition ---------------------------------------------------------------

def _lifted(rep: HRepresentation) -> TreeDecomposition:
    """Exact decomposition of ``H``, with a chain of bags ``{a, s_i, s_{i+1}}`` per subdivided edge."""
    host = exact_decomposition(rep.h)
    bags = list(host.bags)
    edges = list(host.tree.edges())
    for a, b in rep.h.edges():
        seq = rep.edge_paths[(a, b)]
        if len(seq) == 2:
            continue
        anchor = next(t for t, bag in enumerate(host.bags) if a in bag and b in bag)
        prev = anchor
        for i in range(len(seq) - 2, 0, -1):
            bags.append(frozenset({a, seq[i], seq[i + 1]}))
            edges.append((prev, len(bags) - 1))
            prev = len(bags) - 1
    tw_h = host.width
    td = TreeDecomposition(Graph.from_edge_list(len(bags), edges), tuple(bags))
    return TreeDecomposition(td.tree, td.bags, exact=host.exact and td.width == tw_h)


def decompose(rep: HRepresentation, td: TreeDecomposition | None = None) -> TreeDecomposition:
    """A tree decomposition of ``h_phi``.

    With ``td`` given, it is validated and returned (``exact`` set when its
    width matches the exact treewidth, computable at this size). Otherwise
    the width is exact up to ``EXACT_LIMIT`` vertices; larger subdivisions get
    the lifted host decomposition of width at most ``max(tw(H), 2)``.
    """
    g = rep.h_phi
    if td is not None:
        td.validate(g)
        _, tw, exact = elimination_order(g)
        return TreeDecomposition(td.tree, td.bags, exact=exact and td.width == tw)
    if g.n <= EXACT_LIMIT:
        order, _, exact = elimination_order(g)
        return decomposition_from_order(g, order, exact)
    lifted = _lifted(rep)
    lifted.validate(g)
    return lifted


# -- Helly bag ---------------------------------------------------------------------

def _node_supports(rep: HRepresentation, td: TreeDecomposition) -> list[int]:
    """For each vertex of ``G``, the nodes whose bag meets its segment (a subtree)."""
    bag_masks = [to_mask(b) for b in td.bags]
    return [to_mask(t for t, bm in enumerate(bag_masks) if bm & to_mask(seg)) for seg in rep.phi]


def _helly(rep: HRepresentation, td: TreeDecomposition, g: Graph, cap: int) -> tuple[int, str]:
    supports = _node_supports(rep, td)
    nodes = len(td.bags)
    report = None
    if g.n <= ENUM_LIMIT and count_longest_paths(g) <= cap:
        report = enumerate_longest_paths(g, cap=cap)
    if report is not None:
        common = (1 << nodes) - 1
        for path in report.paths:
            union = 0
            for v in path:
                union |= supports[v]
            common &= union
        method = "enumerate"
    else:
        # t works iff the owners of its bag form a transversal
        common = 0
        for t in range(nodes):
            owners = [v for v in range(g.n) if supports[v] >> t & 1]
            if is_transversal(g, owners):
                common |= 1 << t
        method = "dp"
    if not common:
        raise InternalContradiction("longest-path subtrees have no common node")
    return (common & -common).bit_length() - 1, method


def helly_bag(rep: HRepresentation, td: TreeDecomposition, cap: int = HELLY_PATH_CAP) -> int:
    """Lowest-numbered node lying in the subtree of every longest path.

    Longest paths are enumerated when a counting pass finds at most ``cap``
    of them; otherwise each node is tested directly, which is equivalent.
    """
    g = realize(rep)
    if len(component_masks(g, g.all_mask)) != 1:
        raise HypothesisError("represented graph must be connected")
    return _helly(rep, td, g, cap)[0]


# -- intermediate graph ----------------------------------------------------------

@dataclass(frozen=True)
class IntermediateGraph:
    """``h_phi`` with every edge touching a vertex outside ``V(H) ∪ X(t)`` contracted.

    ``vertices[i]`` is the ``h_phi`` id of vertex ``i`` of ``hhat``;
    ``edge_paths[(i, j)]`` is the ``h_phi`` path it replaces, oriented ``i → j``.
    """

    hhat: Graph
    vertices: tuple[int, ...]
    edge_paths: Mapping[tuple[int, int], tuple[int, ...]]


def intermediate_graph(rep: HRepresentation, td: TreeDecomposition, t: int) -> IntermediateGraph:
    keep = set(range(rep.h.n)) | set(td.bags[t])
    vertices = tuple(sorted(keep))
    pos = {x: i for i, x in enumerate(vertices)}
    edges = []
    paths = {}
    for a, b in rep.h.edges():
        seq = rep.edge_paths[(a, b)]
        cut = [i for i, x in enumerate(seq) if x in keep]
        for i, j in zip(cut, cut[1:]):
            piece = seq[i: j + 1]
            u, v = pos[piece[0]], pos[piece[-1]]
            edges.append((u, v))
            paths[(u, v)] = piece
            paths[(v, u)] = tuple(reversed(piece))
    return IntermediateGraph(Graph.from_edge_list(len(vertices), edges), vertices, paths)


def reach(rep: HRepresentation, v: int, path: Sequence[int]) -> int:
    """Largest ``i`` with ``path[0..i-1]`` inside the segment of ``v`` (1-based count)."""
    seg = rep.phi[v]
    if path[0] not in seg:
        raise HypothesisError("vertex does not own the start of the path", v)
    i = 0
    while i < len(path) and path[i] in seg:
        i += 1
    return i


# -- extraction --------------------------------------------------------------------

@dataclass(frozen=True)
class ExtractionTrace:
    """Every intermediate object of one extraction, plus the size checks.

    ``theorem_bound`` is ``4(width+1)|E(H)|``. ``theorem_ok`` is ``None``
    when that check does not apply: the width is not known to be optimal,
    or ``|E(H)| < 2``.
    """

    helly_node: int
    helly_method: str
    x_bag: tuple[int, ...]
    v_x: Mapping[int, frozenset[int]]
    s: frozenset[int]
    intermediate: IntermediateGraph
    a_x: Mapping[int, tuple[int, ...]]
    selections: Mapping[tuple[int, int, int], int]
    q: frozenset[int]
    width: int
    exact_width: bool
    host_edges: int
    s1_bound: int
    s2_bound: int
    theorem_bound: int
    s1_ok: bool
    s2_ok: bool
    theorem_ok: bool | None
    notes: tuple[str, ...] = ()

    def summary(self) -> dict:
        hh = self.intermediate.hhat
        return {
            "helly_node": self.helly_node,
            "helly_method": self.helly_method,
            "bag_size": len(self.x_bag),
            "hhat_vertices": hh.n,
            "hhat_edges": hh.m,
            "q_size": len(self.q),
            "s_size": len(self.s),
            "width": self.width,
            "exact_width": self.exact_width,
            "s1_bound": self.s1_bound,
            "s2_bound": self.s2_bound,
            "theorem_bound": self.theorem_bound,
            "s1_ok": self.s1_ok,
            "s2_ok": self.s2_ok,
            "theorem_ok": self.theorem_ok,
        }


def extract_q(
    rep: HRepresentation, td: TreeDecomposition | None = None, cap: int = HELLY_PATH_CAP
) -> tuple[TransversalCertificate, ExtractionTrace]:
    """Run the whole extraction and return an oracle-verified certificate with its trace."""
    g = realize(rep)
    if len(component_masks(g, g.all_mask)) != 1:
        raise HypothesisError("represented graph must be connected")
    if not is_nice(rep):
        raise HypothesisError("representation must be nice; run normalize_nice first")
    td = decompose(rep, td)
    t, helly_method = _helly(rep, td, g, cap)
    bag = tuple(sorted(td.bags[t]))
    v_x = {x: rep.owners(x) for x in bag}
    s = frozenset().union(*v_x.values())
    inter = intermediate_graph(rep, td, t)
    hh = inter.hhat
    owners_hat = [rep.owners(x) for x in inter.vertices]
    a_x = {}
    selections = {}
    for x in bag:
        ax = tuple(i for i, own in enumerate(owners_hat) if own & v_x[x])
        a_x[x] = ax
        for a in ax:
            cand = sorted(v_x[x] & owners_hat[a])
            for b in iter_bits(hh.adj(a)):
                path = inter.edge_paths[(a, b)]
                best = max(cand, key=lambda v: (reach(rep, v, path), -v))
                selections[(x, a, b)] = best
    q = frozenset(selections.values())
    width = td.width
    host_edges = rep.h.m
    s1_bound = host_edges + width + 1
    s2_bound = 2 * len(bag) * hh.m
    theorem_bound = 4 * (width + 1) * host_edges
    notes = []
    checked = td.exact and host_edges >= 2
    if host_edges < 2:
        notes.append("host has a single edge; theorem constant not checked")
    if not td.exact:
        notes.append("decomposition width not known optimal; theorem constant not checked")
    trace = ExtractionTrace(
        helly_node=t,
        helly_method=helly_method,
        x_bag=bag,
        v_x=v_x,
        s=s,
        intermediate=inter,
        a_x=a_x,
        selections=selections,
        q=q,
        width=width,
        exact_width=td.exact,
        host_edges=host_edges,
        s1_bound=s1_bound,
        s2_bound=s2_bound,
        theorem_bound=theorem_bound,
        s1_ok=hh.m <= s1_bound and hh.n <= rep.h.n + width + 1,
        s2_ok=len(q) <= s2_bound,
        theorem_ok=(len(q) <= theorem_bound) if checked else None,
        notes=tuple(notes),
    )
    bound = theorem_bound if host_edges >= 2 else s2_bound
    verified = g.n <= DP_LIMIT and is_transversal(g, q)
    return TransversalCertificate(q, bound, "hgraph", verified), trace


@dataclass(frozen=True)
class ClaimReport:
    """Pass/fail of each checked statement about one extraction."""

    cliques: bool
    q_meets_every_vx: bool
    q_inside_s: bool
    claim1: Mapping[int, bool]
    claim2: bool
    s1: bool
    s2: bool
    theorem: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.cliques
            and self.q_meets_every_vx
            and self.q_inside_s
            and all(self.claim1.values())
            and self.claim2
            and self.s1
            and self.s2
            and self.theorem is not False
        )


def verify_claims(trace: ExtractionTrace, g: Graph) -> ClaimReport:
    """Check the trace directly: cliques, domination per bag vertex, transversality."""
    qm = to_mask(trace.q)
    sm = to_mask(trace.s)
    outside = g.all_mask & ~sm
    claim1 = {}
    for x, vx in trace.v_x.items():
        part = sm & to_mask(vx)
        need = boundary_mask(g, outside, part)
        mine = qm & to_mask(vx)
        covered = 0
        for v in iter_bits(mine):
            covered |= g.adj(v)
        claim1[x] = not need & ~covered
    return ClaimReport(
        cliques=all(is_clique_mask(g, to_mask(vx)) for vx in trace.v_x.values()),
        q_meets_every_vx=all(qm & to_mask(vx) for vx in trace.v_x.values()),
        q_inside_s=not qm & ~sm,
        claim1=claim1,
        claim2=is_transversal(g, trace.q),
        s1=trace.s1_ok,
        s2=trace.s2_ok,
        theorem=trace.theorem_ok,
    )


# -- JSON ---------------------------------------------------------------------------

_LABEL = re.compile(r"^(?:v(\d+)|e(\d+)-(\d+)/(\d+))$")


def parse_representation(text: str) -> HRepresentation:
    """Parse the JSON layout ``{"h": {"n", "edges"}, "subdivision": {"a-b": l}, "phi": {v: [labels]}}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        host = data["h"]
        h = Graph.from_edge_list(int(host["n"]), [tuple(e) for e in host["edges"]])
        lengths = {}
        for key, ell in data.get("subdivision", {}).items():
            a, b = (int(p) for p in key.split("-"))
            lengths[_edge_key(a, b)] = int(ell)
        raw_phi = data["phi"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed representation: {exc}") from None
    shell = HRepresentation(h, lengths, ())
    index = {label: i for i, label in enumerate(shell.labels)}
    if sorted(int(k) for k in raw_phi) != list(range(len(raw_phi))):
        raise GraphFormatError("phi keys must be 0..n-1")
    phi = []
    for v in range(len(raw_phi)):
        seg = set()
        for label in raw_phi[str(v)]:
            m = _LABEL.match(label)
            if m is None:
                raise GraphFormatError(f"bad h_phi label {label!r} for vertex {v}")
            if m.group(2) is not None:
                a, b, k = int(m.group(2)), int(m.group(3)), int(m.group(4))
                if a > b:
                    ell = shell.lengths.get((b, a), 1)
                    a, b, k = b, a, ell - k
                label = f"e{a}-{b}/{k}"
            if label not in index:
                raise GraphFormatError(f"label {label!r} is not a vertex of the subdivided host")
            seg.add(index[label])
        phi.append(frozenset(seg))
    rep = HRepresentation(h, shell.lengths, tuple(phi))
    rep.validate()
    return rep


def load_representation(path: Union[str, os.PathLike]) -> HRepresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_representation(fh.read())


def dump_representation(rep: HRepresentation) -> str:
    """Serialize with one segment per line; the output parses back to an equal representation."""
    host = {"n": rep.h.n, "edges": [list(e) for e in rep.h.edges()]}
    sub = {f"{a}-{b}": ell for (a, b), ell in rep.lengths.items() if ell != 1}
    rows = [
        f"  {json.dumps(str(v))}: {json.dumps([rep.labels[x] for x in sorted(seg)])}"
        for v, seg in enumerate(rep.phi)
    ]
    body = ",\n".join(rows)
    return (
        "{\n"
        f' "h": {json.dumps(host)},\n'
        f' "subdivision": {json.dumps(sub)},\n'
        f' "phi": {{\n{body}\n }}\n'
        "}\n"
    )
