"""Tree decompositions: exact treewidth at desk scale, validation, PACE I/O.

Exact width comes from safe reductions (simplicial and almost simplicial
vertices against a degeneracy lower bound) followed by the subset recurrence
of Bodlaender et al. on whatever kernel is left. Subdivided graphs reduce
to their branch vertices, so the kernel is tiny in practice.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import lru_cache

from .errors import GraphFormatError, HypothesisError
from .graph import Graph, component_masks, iter_bits, to_mask

KERNEL_LIMIT = 16

__all__ = [
    "TreeDecomposition",
    "elimination_order",
    "treewidth",
    "decomposition_from_order",
    "exact_decomposition",
    "parse_pace",
    "format_pace",
]


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree on nodes ``0..len(bags)-1`` with one bag per node.

    ``exact`` is true when ``width`` is known to equal the treewidth.
    """

    tree: Graph
    bags: tuple[frozenset[int], ...]
    exact: bool = False

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def support(self, v: int) -> int:
        """Nodes whose bag contains ``v``, as a mask."""
        return to_mask(t for t, bag in enumerate(self.bags) if v in bag)

    def validate(self, g: Graph) -> None:
        """Raise :class:`HypothesisError` unless this decomposes ``g``."""
        tree = self.tree
        if tree.n != len(self.bags) or tree.n == 0:
            raise HypothesisError("tree must have one node per bag and at least one node")
        if tree.m != tree.n - 1 or len(component_masks(tree, tree.all_mask)) != 1:
            raise HypothesisError("decomposition tree must be a tree")
        for bag in self.bags:
            if any(not 0 <= v < g.n for v in bag):
                raise HypothesisError("bag holds a vertex outside the graph", sorted(bag))
        for v in range(g.n):
            sup = self.support(v)
            if not sup:
                raise HypothesisError("vertex in no bag", v)
            if len(component_masks(tree, sup)) != 1:
                raise HypothesisError("bags containing a vertex do not form a subtree", v)
        for u, v in g.edges():
            if not self.support(u) & self.support(v):
                raise HypothesisError("edge in no bag", (u, v))


def _degeneracy(adj: dict[int, set[int]]) -> int:
    left = {v: set(ns) for v, ns in adj.items()}
    best = 0
    while left:
        v = min(left, key=lambda u: (len(left[u]), u))
        best = max(best, len(left[v]))
        for u in left[v]:
            left[u].discard(v)
        del left[v]
    return best


def _eliminate(adj: dict[int, set[int]], v: int) -> int:
    ns = adj.pop(v)
    for u in ns:
        adj[u].discard(v)
        adj[u] |= ns - {u}
    return len(ns)


def _is_clique(adj, vs) -> bool:
    vs = list(vs)
    return all(vs[j] in adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))


def _kernel_order(adj: dict[int, set[int]]) -> tuple[list[int], int]:
    """Optimal elimination order of a small graph by the subset recurrence."""
    verts = sorted(adj)
    k = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    rows = [to_mask(idx[u] for u in adj[v]) for v in verts]

    def q_size(s: int, v: int) -> int:
        # vertices outside s ∪ {v} reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            grow = 0
            for u in iter_bits(frontier):
                grow |= rows[u]
            grow &= ~seen
            seen |= grow
            out |= grow & ~s
            frontier = grow & s
        return out.bit_count()

    @lru_cache(maxsize=None)
    def tw(s: int) -> tuple[int, int]:
        if not s:
            return -1, -1
        best = (k + 1, -1)
        for v in iter_bits(s):
            rest = s & ~(1 << v)
            val = max(tw(rest)[0], q_size(rest, v))
            if val < best[0]:
                best = (val, v)
        return best

    order = []
    s = (1 << k) - 1
    width = tw(s)[0]
    while s:
        v = tw(s)[1]
        order.append(v)
        s &= ~(1 << v)
    return [verts[i] for i in reversed(order)], max(width, 0)


def elimination_order(g: Graph) -> tuple[list[int], int, bool]:
    """An elimination order, its width and whether that width is optimal."""
    adj = {v: set(iter_bits(g.adj(v))) for v in range(g.n)}
    order: list[int] = []
    width = 0
    low = _degeneracy(adj)
    changed = True
    while changed and adj:
        changed = False
        for v in sorted(adj, key=lambda u: (len(adj[u]), u)):
            ns = adj[v]
            simplicial = _is_clique(adj, ns)
            almost = len(ns) <= low and any(_is_clique(adj, ns - {u}) for u in ns)
            if simplicial or almost:
                width = max(width, _eliminate(adj, v))
                order.append(v)
                low = max(low, _degeneracy(adj)) if adj else low
                changed = True
                break
    if not adj:
        return order, width, True
    if len(adj) <= KERNEL_LIMIT:
        rest, kw = _kernel_order(adj)
        return order + rest, max(width, kw), True
    # min-fill fallback, not guaranteed optimal
    while adj:
        def fill(v):
            ns = list(adj[v])
            return sum(1 for i in range(len(ns)) for j in range(i + 1, len(ns)) if ns[j] not in adj[ns[i]])
        v = min(adj, key=lambda u: (fill(u), len(adj[u]), u))
        width = max(width, _eliminate(adj, v))
        order.append(v)
    return order, width, False


def treewidth(g: Graph) -> int:
    order, width, exact = elimination_order(g)
    if not exact:
        raise HypothesisError("kernel too large for exact treewidth", len(order))
    return width


def decomposition_from_order(g: Graph, order: list[int], exact: bool = False) -> TreeDecomposition:
    """Bags ``{v} ∪ later neighbours`` in the filled graph; node ``i`` is ``order[i]``."""
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(iter_bits(g.adj(v))) for v in range(g.n)}
    bags = []
    parent = []
    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        bags.append(frozenset(later | {v}))
        parent.append(min((pos[u] for u in later), default=None))
        for u in later:
            adj[u] |= later - {u}
    edges = []
    roots = []
    for i, p in enumerate(parent):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, p))
    # a disconnected input leaves one root per component; chain them
    edges += list(zip(roots, roots[1:]))
    return TreeDecomposition(Graph.from_edge_list(len(bags), edges), tuple(bags), exact)


def exact_decomposition(g: Graph) -> TreeDecomposition:
    order, _, exact = elimination_order(g)
    return decomposition_from_order(g, order, exact)


# -- PACE 2017 .td format ------------------------------------------------------

def parse_pace(text: str) -> TreeDecomposition:
    """Parse ``s td B W N`` / ``b id v...`` / ``a b`` lines (1-based ids)."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if len(parts) != 5 or parts[1] != "td":
                    raise GraphFormatError("header must be 's td <bags> <width+1> <vertices>'", lineno)
                header = tuple(int(p) for p in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise GraphFormatError("bag before header", lineno)
                bid = int(parts[1])
                if not 1 <= bid <= header[0]:
                    raise GraphFormatError(f"bag id {bid} outside 1..{header[0]}", lineno)
                members = [int(p) for p in parts[2:]]
                if any(not 1 <= v <= header[2] for v in members):
                    raise GraphFormatError("bag member outside vertex range", lineno)
                bags[bid - 1] = frozenset(v - 1 for v in members)
            else:
                if header is None or len(parts) != 2:
                    raise GraphFormatError(f"unexpected line {raw.strip()!r}", lineno)
                a, b = int(parts[0]), int(parts[1])
                if not (1 <= a <= header[0] and 1 <= b <= header[0]) or a == b:
                    raise GraphFormatError(f"bad tree edge ({a}, {b})", lineno)
                edges.append((a - 1, b - 1))
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"non-integer token in {raw.strip()!r}", lineno) from None
    if header is None:
        raise GraphFormatError("missing 's td' header")
    if len(bags) != header[0]:
        raise GraphFormatError(f"header announces {header[0]} bags, found {len(bags)}")
    td = TreeDecomposition(Graph.from_edge_list(header[0], edges), tuple(bags[i] for i in range(header[0])))
    if td.width + 1 != header[1]:
        raise GraphFormatError(f"header width+1 is {header[1]}, bags give {td.width + 1}")
    return td


def format_pace(td: TreeDecomposition, n_vertices: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n_vertices}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1), *(str(v + 1) for v in sorted(bag))]))
    lines.extend(f"{u + 1} {v + 1}" for u, v in td.tree.edges())
    return "\n".join(lines) + "\n"
