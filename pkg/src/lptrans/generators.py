"""Seeded instance sources with their ground truth kept alongside.

All randomness comes from :class:`SplitMix64`, a fixed 64-bit recurrence, so
a ``(seed, parameters)`` pair names the same instance on every platform and
in every language that implements the recurrence.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from importlib import resources

from .errors import BudgetExhausted
from .graph import Graph, is_connected, iter_bits, parse_edge_list, to_mask
from .hgraph import HRepresentation, realize
from .recognizers import complete_graph, contains_induced

MASK64 = (1 << 64) - 1

__all__ = [
    "SplitMix64",
    "HInstance",
    "random_tree",
    "random_connected_host",
    "named_host",
    "HOST_NAMES",
    "gen_hgraph",
    "gen_chordal",
    "gen_interval",
    "gen_circular_arc",
    "interval_representation",
    "arc_representation",
    "arc_points",
    "gen_class_filtered",
    "gen_fat_structure",
    "gen_blowup",
    "fixture_walther_zamfirescu",
    "fixture_text",
]


class SplitMix64:
    """The SplitMix64 generator.

    ``state += 0x9E3779B97F4A7C15``; the output is ``state`` passed through
    ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
    z *= 0x94D049BB133111EB; z ^= z >> 31`` (all modulo 2**64).
    Bounded integers use rejection on the top of the 64-bit range, so they
    are exactly uniform.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def chance(self, p: float) -> bool:
        return self.random() < p

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def fork(self, tag: int) -> SplitMix64:
        """An independent stream derived from this one and ``tag``."""
        return SplitMix64(self.next_u64() ^ (tag * 0xD1B54A32D192ED03 & MASK64))


@dataclass(frozen=True)
class HInstance:
    """A represented graph with its representation and, when there is one, the source model.

    Unpacks as ``graph, rep``. ``model`` holds interval endpoints
    ``(l, r)`` or arcs ``(start, length)`` on a circle of ``circle`` points.
    """

    graph: Graph
    rep: HRepresentation
    model: tuple[tuple[int, int], ...] = ()
    circle: int = 0
    host_name: str = ""
    params: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter((self.graph, self.rep))


# -- hosts ----------------------------------------------------------------------

def random_tree(rng: SplitMix64, k: int) -> Graph:
    """Random recursive tree: vertex ``i`` attaches to a uniform earlier vertex."""
    return Graph.from_edge_list(k, [(rng.below(i), i) for i in range(1, k)])


def random_connected_host(rng: SplitMix64, k: int, p: float = 0.5) -> Graph:
    tree = random_tree(rng, k)
    edges = set(tree.edges())
    for i in range(k):
        for j in range(i + 1, k):
            if (i, j) not in edges and rng.chance(p):
                edges.add((i, j))
    return Graph.from_edge_list(k, sorted(edges))


HOST_NAMES = ("K2", "K3", "paw", "K4", "random")


def named_host(name: str, rng: SplitMix64 | None = None) -> Graph:
    if name in ("K2", "K3", "K4"):
        return complete_graph(int(name[1]))
    if name == "paw":
        return Graph.from_edge_list(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    if name == "random":
        if rng is None:
            raise ValueError("a random host needs a generator")
        return random_connected_host(rng, rng.between(2, 5))
    raise ValueError(f"unknown host {name!r}; expected one of {HOST_NAMES}")


# -- segments on a subdivided host ---------------------------------------------------

def _grow(rng: SplitMix64, g: Graph, start: int, size: int) -> int:
    seg = 1 << start
    frontier = g.adj(start)
    while seg.bit_count() < size and frontier:
        cand = list(iter_bits(frontier))
        x = rng.choice(cand)
        seg |= 1 << x
        frontier = (frontier | g.adj(x)) & ~seg
    return seg


def _cover_edges(rng: SplitMix64, g: Graph, segs: list[int]) -> None:
    """Extend segments until every edge of ``g`` lies in one of them.

    Each step adds an endpoint to a random segment already holding the other
    one, so segments stay connected. Needs ``g`` connected.
    """
    while True:
        covered = 0
        for s in segs:
            covered |= s
        todo = None
        for x, y in g.edges():
            if any(s >> x & 1 and s >> y & 1 for s in segs):
                continue
            if covered >> x & 1 or covered >> y & 1:
                todo = (x, y)
                break
        if todo is None:
            return
        x, y = todo
        if not covered >> x & 1:
            x, y = y, x
        i = rng.choice([i for i, s in enumerate(segs) if s >> x & 1])
        segs[i] |= 1 << y


def _connect(rng: SplitMix64, g: Graph, segs: list[int]) -> None:
    """Grow segments until their intersection graph is connected.

    The component of segment 0 absorbs one outside vertex of ``g`` per
    step, so it eventually touches every other segment.
    """
    while True:
        group = {0}
        union = segs[0]
        changed = True
        while changed:
            changed = False
            for i, s in enumerate(segs):
                if i not in group and s & union:
                    group.add(i)
                    union |= s
                    changed = True
        if len(group) == len(segs):
            return
        frontier = 0
        for x in iter_bits(union):
            frontier |= g.adj(x)
        frontier &= ~union
        y = rng.choice(list(iter_bits(frontier)))
        holders = [i for i in sorted(group) if segs[i] & g.adj(y)]
        segs[rng.choice(holders)] |= 1 << y


def _random_segments(rng: SplitMix64, g: Graph, n: int, density: float) -> list[int]:
    """``n`` random connected segments of ``g`` with a connected, nice intersection model.

    Target sizes are uniform in ``[density²·|V|, density·|V|]`` (at least 1),
    so ``density=1`` makes every segment the whole graph.
    """
    top = max(1, round(density * g.n))
    low = min(top, max(1, round(density * density * g.n)))
    segs = [_grow(rng, g, rng.below(g.n), rng.between(low, top)) for _ in range(n)]
    if n:
        _connect(rng, g, segs)
        _cover_edges(rng, g, segs)
    return segs


def gen_hgraph(
    seed: int, n: int, host: str | Graph = "random", max_len: int = 3, density: float = 0.3
) -> HInstance:
    """A connected ``H``-graph on ``n`` vertices with a nice representation.

    Each host edge is subdivided into a path of uniform length in
    ``1..max_len``. Segment sizes scale with ``density·|V(H^Φ)|``.
    """
    rng = SplitMix64(seed)
    if isinstance(host, Graph):
        h, name = host, "custom"
    else:
        h, name = named_host(host, rng), host
    lengths = {e: rng.between(1, max_len) for e in h.edges()}
    shell = HRepresentation(h, lengths, ())
    segs = _random_segments(rng, shell.h_phi, n, density)
    rep = HRepresentation(h, lengths, tuple(frozenset(iter_bits(s)) for s in segs))
    params = {"seed": seed, "n": n, "host": name, "max_len": max_len, "density": density}
    return HInstance(realize(rep), rep, host_name=name, params=params)


def gen_chordal(
    seed: int, n: int, density: float = 0.3, host_size: int | None = None, host: Graph | None = None
) -> HInstance:
    """A connected chordal graph as the intersection graph of subtrees of a tree.

    The tree is ``host`` if given, else a random tree on ``host_size``
    vertices (default ``max(2, n)``). With ``density=1`` every subtree is
    the whole tree and the graph is complete.
    """
    rng = SplitMix64(seed)
    if host is not None:
        if host.m != host.n - 1 or not is_connected(host):
            raise ValueError("host must be a tree")
        tree = host
    else:
        k = host_size if host_size is not None else max(2, n)
        if k < 2:
            raise ValueError("host tree needs at least two vertices")
        tree = random_tree(rng, k)
    segs = _random_segments(rng, tree, n, density)
    rep = HRepresentation(tree, {}, tuple(frozenset(iter_bits(s)) for s in segs))
    params = {"seed": seed, "n": n, "density": density, "host_size": tree.n}
    return HInstance(realize(rep), rep, host_name="tree", params=params)


def gen_interval(seed: int, n: int, span: int | None = None) -> HInstance:
    """Random integer intervals, repaired to a connected nice model, on a subdivided K2.

    Left ends are uniform on ``0..span-1`` (default ``2n``), lengths uniform
    below ``span/3``. Any gap in the
    sorted sweep is closed by stretching the interval reaching furthest,
    then the model is shifted to start at 0. Point ``i`` of the line is
    ``v0`` at 0, ``v1`` at the last point and ``e0-1/i`` in between.
    """
    rng = SplitMix64(seed)
    if n < 1:
        raise ValueError("n must be positive")
    span = span if span is not None else max(2, 2 * n)
    ivs = []
    reach = max(1, span // 3)
    for _ in range(n):
        a = rng.below(span)
        ivs.append([a, a + rng.below(reach)])
    order = sorted(range(n), key=lambda i: (ivs[i][0], ivs[i][1], i))
    best = order[0]
    for i in order[1:]:
        if ivs[i][0] > ivs[best][1]:
            ivs[best][1] = ivs[i][0]
        if ivs[i][1] > ivs[best][1]:
            best = i
    lo = min(iv[0] for iv in ivs)
    model = [(l - lo, r - lo) for l, r in ivs]
    if max(r for _, r in model) == 0:
        model[0] = (0, 1)
    rep = interval_representation(model)
    points = max(r for _, r in model) + 1
    return HInstance(realize(rep), rep, tuple(model), points, "K2", {"seed": seed, "n": n, "span": span})


def interval_representation(model: Sequence[tuple[int, int]]) -> HRepresentation:
    """Closed integer intervals ``[l, r]`` as segments of a subdivided K2.

    The line runs from the smallest left end to the largest right end (at
    least two points); its ends are the host vertices.
    """
    lo = min(l for l, _ in model)
    hi = max(max(r for _, r in model), lo + 1)
    if any(l > r for l, r in model):
        raise ValueError("interval with l > r")
    shell = HRepresentation(complete_graph(2), {(0, 1): hi - lo}, ())
    line = shell.edge_paths[(0, 1)]
    return HRepresentation(shell.h, shell.lengths, tuple(frozenset(line[l - lo: r - lo + 1]) for l, r in model))


def _arc_mask(start: int, length: int, c: int) -> int:
    return to_mask((start + k) % c for k in range(length))


def arc_points(start: int, length: int, c: int) -> frozenset[int]:
    """Circle points covered by an arc."""
    return frozenset((start + k) % c for k in range(length))


def gen_circular_arc(seed: int, n: int, circle: int | None = None) -> HInstance:
    """Random arcs on a circle of ``circle`` points (default ``max(6, 2n)``) on a subdivided K3.

    Arcs are ``(start, length)``; a gap is closed by lengthening an arc
    that ends just before it. Host vertices sit at points ``0``, ``c//3``
    and ``2c//3``.
    """
    rng = SplitMix64(seed)
    if n < 1:
        raise ValueError("n must be positive")
    c = circle if circle is not None else max(6, 2 * n)
    if c < 3:
        raise ValueError("circle needs at least three points")
    arcs = [[rng.below(c), rng.between(1, max(1, c // 2))] for _ in range(n)]
    while True:
        masks = [_arc_mask(s, ln, c) for s, ln in arcs]
        covered = 0
        for m in masks:
            covered |= m
        start = next(iter_bits(covered))
        gap = None
        for step in range(c):
            i = (start + step) % c
            j = (i + 1) % c
            if not any(m >> i & 1 and m >> j & 1 for m in masks):
                gap = i
                break
        if gap is None:
            break
        # an arc covering the gap's left point without its right one ends there
        k = min(k for k, m in enumerate(masks) if m >> gap & 1)
        arcs[k][1] += 1
    model = tuple((s, ln) for s, ln in arcs)
    rep = arc_representation(model, c)
    return HInstance(realize(rep), rep, model, c, "K3", {"seed": seed, "n": n, "circle": c})


def arc_representation(model: Sequence[tuple[int, int]], c: int) -> HRepresentation:
    """Arcs ``(start, length)`` on a circle of ``c`` points as segments of a subdivided K3.

    Host vertices sit at points ``0``, ``c//3`` and ``2c//3``.
    """
    if c < 3:
        raise ValueError("circle needs at least three points")
    if any(not 1 <= ln <= c for _, ln in model):
        raise ValueError("arc lengths must lie in 1..c")
    h = complete_graph(3)
    anchors = (0, c // 3, 2 * c // 3)
    lengths = {(0, 1): anchors[1], (1, 2): anchors[2] - anchors[1], (0, 2): c - anchors[2]}
    shell = HRepresentation(h, lengths, ())
    where = {}
    for (a, b), seq in shell.edge_paths.items():
        if a > b:
            continue
        if (a, b) == (0, 2):
            pts = [0] + [(c - k) % c for k in range(1, len(seq))]
        else:
            pts = list(range(anchors[a], anchors[a] + len(seq)))
        for p, x in zip(pts, seq):
            where[p] = x
    phi = tuple(frozenset(where[p] for p in iter_bits(_arc_mask(s % c, ln, c))) for s, ln in model)
    return HRepresentation(h, lengths, phi)


# -- rejection sampling ------------------------------------------------------------

def gen_class_filtered(
    seed: int, n: int, p: float, forbidden: Sequence[Graph] = (), budget: int = 2000
) -> Graph:
    """A connected G(n, p) sample containing no induced copy of any forbidden pattern.

    Raises :class:`BudgetExhausted` after ``budget`` rejected draws.
    """
    rng = SplitMix64(seed)
    for _ in range(budget):
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.chance(p)]
        g = Graph.from_edge_list(n, edges)
        if n and not is_connected(g):
            continue
        if any(contains_induced(g, f) is not None for f in forbidden):
            continue
        return g
    raise BudgetExhausted(f"G({n}, {p}) avoiding {len(forbidden)} patterns", budget)


def gen_fat_structure(
    seed: int,
    classes: int,
    cyclic: bool = False,
    max_class: int = 2,
    extra: int = 0,
    forbidden: Sequence[Graph] = (),
    budget: int = 200,
) -> Graph:
    """A fat path or cycle: cliques ``C_0..C_{k-1}`` complete between consecutive classes.

    ``extra`` further vertices each get a random nonempty set of neighbours.
    The draw is repeated until the graph is connected and avoids every
    forbidden pattern, or :class:`BudgetExhausted` is raised.
    """
    rng = SplitMix64(seed)
    if cyclic and classes < 4:
        raise ValueError("fat cycles need at least four classes")
    for _ in range(budget):
        sizes = [rng.between(1, max_class) for _ in range(classes)]
        owner = [c for c, s in enumerate(sizes) for _ in range(s)]
        base = len(owner)
        edges = []
        for u in range(base):
            for v in range(u + 1, base):
                d = abs(owner[u] - owner[v])
                if d <= 1 or (cyclic and d == classes - 1):
                    edges.append((u, v))
        for i in range(extra):
            z = base + i
            nbrs = [u for u in range(z) if rng.chance(0.3)] or [rng.below(z)]
            edges.extend((u, z) for u in nbrs)
        g = Graph.from_edge_list(base + extra, edges)
        if not is_connected(g):
            continue
        if any(contains_induced(g, f) is not None for f in forbidden):
            continue
        return g
    raise BudgetExhausted(f"fat structure with {classes} classes", budget)


def gen_blowup(
    seed: int,
    base: Graph,
    max_module: int = 3,
    forbidden: Sequence[Graph] = (),
    budget: int = 200,
) -> Graph:
    """Substitute a random graph on ``1..max_module`` vertices for every vertex of ``base``.

    Modules are G(k, p) with ``p`` drawn per module, so cliques and
    independent sets both occur. Classes defined by prime forbidden graphs
    are closed under this operation; the filter catches the rest.
    """
    rng = SplitMix64(seed)
    for _ in range(budget):
        owner: list[int] = []
        edges = []
        for v in range(base.n):
            k = rng.between(1, max_module)
            p = rng.choice((0.0, 0.5, 1.0))
            first = len(owner)
            owner.extend([v] * k)
            edges.extend(
                (first + i, first + j) for i in range(k) for j in range(i + 1, k) if rng.chance(p)
            )
        for u in range(len(owner)):
            for w in range(u + 1, len(owner)):
                if base.has_edge(owner[u], owner[w]):
                    edges.append((u, w))
        g = Graph.from_edge_list(len(owner), edges)
        if not is_connected(g):
            continue
        if any(contains_induced(g, f) is not None for f in forbidden):
            continue
        return g
    raise BudgetExhausted(f"blow-up of a {base.n}-vertex graph", budget)


# -- fixtures ---------------------------------------------------------------------

def fixture_text(name: str = "walther_zamfirescu") -> str:
    return resources.files("lptrans").joinpath("fixtures", f"{name}.el").read_text(encoding="utf-8")


def fixture_walther_zamfirescu() -> Graph:
    """The checked-in 12-vertex graph with a two-vertex but no one-vertex transversal."""
    return parse_edge_list(fixture_text("walther_zamfirescu"))
