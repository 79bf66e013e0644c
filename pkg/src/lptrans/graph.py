"""Immutable simple graphs on dense integer ids, with set-level predicates.

Adjacency is stored as one Python ``int`` bitmask per vertex, so neighbourhood
intersection is a single ``&``. Vertex sets cross the public API as
``frozenset[int]``; internally most code works on masks (see :func:`to_mask`
and :func:`from_mask`).
"""

from __future__ import annotations

import io
import os
from collections.abc import Iterable, Iterator
from typing import Union

from .errors import GraphFormatError, HypothesisError

VertexSet = frozenset
Path = tuple  # ordered tuple of distinct vertex ids

__all__ = [
    "Graph",
    "VertexSet",
    "Path",
    "to_mask",
    "from_mask",
    "iter_bits",
    "components",
    "boundary",
    "dominates",
    "is_connected_dominating",
    "closed_neighborhood",
    "induced",
    "is_clique",
    "is_complete_between",
    "is_connected",
    "is_path",
    "is_induced_path",
    "read_edge_list",
    "parse_edge_list",
    "write_edge_list",
    "format_edge_list",
]


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """A simple undirected graph on vertices ``0 .. n-1``.

    Instances are immutable and hashable. ``origin`` is set on graphs built by
    :func:`induced` and maps each new id to the id it had in the parent graph.
    """

    __slots__ = ("n", "_rows", "origin", "_hash")

    def __init__(self, n: int, rows: Iterable[int], origin: tuple[int, ...] | None = None):
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        self.n = n
        self._rows = rows
        self.origin = origin
        self._hash = None

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from an edge list; duplicate edges are merged."""
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def adj(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitmask."""
        return self._rows[v]

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self._rows[v])

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check(g: Graph, x: Iterable[int], name: str = "vertex set") -> int:
    mask = to_mask(x)
    if mask >> g.n:
        raise HypothesisError(f"{name} is not a subset of V(G)", sorted(v for v in iter_bits(mask) if v >= g.n))
    return mask


def component_masks(g: Graph, within: int) -> list[int]:
    """Connected components of ``g[within]`` as masks, ordered by minimum member."""
    out = []
    rest = within
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= g.adj(v)
            frontier = grow & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    within_mask = g.all_mask if within is None else _check(g, within)
    return [from_mask(c) for c in component_masks(g, within_mask)]


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    """True for a nonempty connected ``g[within]``."""
    within_mask = g.all_mask if within is None else _check(g, within)
    return len(component_masks(g, within_mask)) == 1


def neighborhood_mask(g: Graph, x: int) -> int:
    """Union of the open neighbourhoods of the members of ``x``."""
    out = 0
    for v in iter_bits(x):
        out |= g.adj(v)
    return out


def boundary_mask(g: Graph, x: int, y: int) -> int:
    return sum(1 << v for v in iter_bits(x) if g.adj(v) & y)


def boundary(g: Graph, x: Iterable[int], y: Iterable[int]) -> frozenset[int]:
    """Members of ``x`` with at least one neighbour in ``y``."""
    xm, ym = _check(g, x), _check(g, y)
    if xm & ym:
        raise HypothesisError("boundary requires disjoint sets", sorted(from_mask(xm & ym)))
    return from_mask(boundary_mask(g, xm, ym))


def dominates_mask(g: Graph, d: int, target: int) -> bool:
    return not (target & ~(d | neighborhood_mask(g, d)))


def dominates(g: Graph, d: Iterable[int], target: Iterable[int]) -> bool:
    return dominates_mask(g, _check(g, d), _check(g, target))


def is_connected_dominating(g: Graph, d: Iterable[int]) -> bool:
    dm = _check(g, d)
    if not dm:
        raise HypothesisError("connected dominating set must be nonempty")
    return len(component_masks(g, dm)) == 1 and dominates_mask(g, dm, g.all_mask)


def closed_neighborhood(g: Graph, x: Iterable[int]) -> frozenset[int]:
    xm = _check(g, x)
    return from_mask(xm | neighborhood_mask(g, xm))


def induced(g: Graph, x: Iterable[int]) -> Graph:
    """The subgraph induced by ``x``; vertices keep their relative order.

    The result's ``origin`` tuple maps new ids back to ids of ``g``.
    """
    keep = sorted(iter_bits(_check(g, x)))
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(sum(1 << pos[u] for u in iter_bits(g.adj(v)) if u in pos))
    return Graph(len(keep), rows, origin=tuple(keep))


def is_clique_mask(g: Graph, x: int) -> bool:
    return all(not (x & ~g.adj(v) & ~(1 << v)) for v in iter_bits(x))


def is_clique(g: Graph, x: Iterable[int]) -> bool:
    return is_clique_mask(g, _check(g, x))


def is_complete_between(g: Graph, x: Iterable[int], y: Iterable[int]) -> bool:
    """True iff every vertex of ``x`` is adjacent to every vertex of ``y``."""
    xm, ym = _check(g, x), _check(g, y)
    if xm & ym:
        raise HypothesisError("completeness is defined for disjoint sets", sorted(from_mask(xm & ym)))
    return all(not (ym & ~g.adj(v)) for v in iter_bits(xm))


def is_path(g: Graph, seq) -> bool:
    seq = tuple(seq)
    if not seq or len(set(seq)) != len(seq) or any(not 0 <= v < g.n for v in seq):
        return False
    return all(g.has_edge(a, b) for a, b in zip(seq, seq[1:]))


def is_induced_path(g: Graph, seq) -> bool:
    """True iff ``seq`` is a path and no two non-consecutive members are adjacent."""
    if not is_path(g, seq):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for i, v in enumerate(seq):
        for u in iter_bits(g.adj(v)):
            if u in pos and abs(pos[u] - i) != 1:
                return False
    return True


# -- edge-list text format -------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    header = None
    edges = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"edge ({a}, {b}) outside [0, {n})", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header", None)
    if len(edges) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {len(edges)}", None)
    return Graph.from_edge_list(header[0], edges)


def read_edge_list(path: Union[str, os.PathLike]) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: Union[str, os.PathLike], comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, comment))
