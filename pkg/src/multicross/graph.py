"""Complete multipartite graphs and the edge-set algebra used to state crossing counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[str, str]


@dataclass(frozen=True, eq=False)
class PartitionedGraph:
    """A graph whose vertices are split into ordered parts.

    ``parts`` fixes the vertex order: vertex ids are compared by (part, index),
    and every edge is stored as a pair sorted by that order.  Edges may be any
    subset of the cross-part pairs, so edge-deleted subgraphs stay representable.
    """

    parts: tuple[tuple[str, ...], ...]
    edges: tuple[Edge, ...]
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        seen: dict[str, int] = {}
        for p, part in enumerate(self.parts):
            if not part:
                raise ValueError(f"part {p} is empty")
            for v in part:
                if v in seen:
                    raise ValueError(f"vertex {v!r} appears in parts {seen[v]} and {p}")
                seen[v] = p
        if self.names is not None and len(self.names) != len(self.parts):
            raise ValueError("need one name per part")
        order = self.order
        normalized = set()
        for u, v in self.edges:
            if u not in seen or v not in seen:
                raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
            if seen[u] == seen[v]:
                raise ValueError(f"edge ({u}, {v}) joins two vertices of part {seen[u]}")
            normalized.add((u, v) if order[u] < order[v] else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(normalized, key=self.edge_key)))

    @cached_property
    def order(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(v for part in self.parts for v in part)}

    @cached_property
    def part_index(self) -> dict[str, int]:
        return {v: p for p, part in enumerate(self.parts) for v in part}

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for part in self.parts for v in part)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns, key=self.order.__getitem__)) for v, ns in adj.items()}

    def edge_key(self, e: Edge) -> tuple[int, int]:
        return (self.order[e[0]], self.order[e[1]])

    def edge(self, u: str, v: str) -> Edge:
        """Return the stored id of edge uv, whichever way round it is given."""
        e = (u, v) if self.order[u] < self.order[v] else (v, u)
        if e not in self.edge_set:
            raise ValueError(f"({u}, {v}) is not an edge")
        return e

    def is_complete(self) -> bool:
        sizes = [len(p) for p in self.parts]
        total = sum(sizes)
        return len(self.edges) == (total * total - sum(s * s for s in sizes)) // 2

    def part_name(self, p: int) -> str:
        return self.names[p] if self.names is not None else f"P{p}"

    def all_edges(self) -> "EdgeSet":
        return EdgeSet(self, frozenset(self.edges))

    def without_edges(self, removed: Iterable[Edge]) -> "PartitionedGraph":
        drop = {self.edge(*e) for e in removed}
        return PartitionedGraph(self.parts, tuple(e for e in self.edges if e not in drop), self.names)

    def __repr__(self) -> str:
        sizes = ",".join(str(len(p)) for p in self.parts)
        return f"PartitionedGraph(K_{{{sizes}}}, |E|={len(self.edges)})"


def adjacent(e: Edge, f: Edge) -> bool:
    return bool(set(e) & set(f))


@dataclass(frozen=True)
class EdgeSet:
    """A set of edges of one graph; supports |, &, - like ``frozenset``."""

    graph: PartitionedGraph = field(repr=False, compare=False)
    ids: frozenset[Edge]

    def __post_init__(self) -> None:
        unknown = self.ids - self.graph.edge_set
        if unknown:
            raise ValueError(f"edges not in graph: {sorted(unknown)[:3]}")

    def _other(self, other: "EdgeSet") -> frozenset[Edge]:
        if other.graph is not self.graph:
            raise ValueError("edge sets belong to different graphs")
        return other.ids

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.graph, self.ids | self._other(other))

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.graph, self.ids & self._other(other))

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.graph, self.ids - self._other(other))

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.ids, key=self.graph.edge_key))

    def __contains__(self, e: object) -> bool:
        return e in self.ids

    def isdisjoint(self, other: "EdgeSet") -> bool:
        return self.ids.isdisjoint(self._other(other))


def empty_edges(g: PartitionedGraph) -> EdgeSet:
    return EdgeSet(g, frozenset())


def union(g: PartitionedGraph, sets: Iterable[EdgeSet]) -> EdgeSet:
    out = empty_edges(g)
    for s in sets:
        out = out | s
    return out


def complete_multipartite(
    sizes: Sequence[int], names: Optional[Sequence[str]] = None
) -> PartitionedGraph:
    """Build K_{a_1,...,a_k}.

    Vertices are ``p<p>v<i>`` by default; with part names they are the
    lower-cased name followed by a 1-based index (part ``Z`` gives z1, z2, ...).
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("need at least one part")
    if any(not isinstance(s, int) or s < 1 for s in sizes):
        raise ValueError(f"part sizes must be positive integers, got {sizes}")
    if names is not None:
        names = tuple(names)
        if len(names) != len(sizes) or len(set(names)) != len(names):
            raise ValueError("part names must be distinct, one per part")
        parts = tuple(tuple(f"{nm.lower()}{i + 1}" for i in range(s)) for nm, s in zip(names, sizes))
    else:
        parts = tuple(tuple(f"p{p}v{i}" for i in range(s)) for p, s in enumerate(sizes))
    edges = [
        (u, v)
        for p, pu in enumerate(parts)
        for q in range(p + 1, len(parts))
        for u in pu
        for v in parts[q]
    ]
    return PartitionedGraph(parts, tuple(edges), names)


def parse_graph_spec(spec: str) -> PartitionedGraph:
    """``"1,2,2,3"`` -> K_{1,2,2,3} with default vertex ids."""
    try:
        sizes = [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise ValueError(f"bad graph spec {spec!r}; expected comma-separated part sizes") from None
    return complete_multipartite(sizes)


def _check_part(g: PartitionedGraph, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i < len(g.parts):
        raise ValueError(f"part index {i} out of range for {len(g.parts)} parts")


def edge_set_between(g: PartitionedGraph, i: int, j: int) -> EdgeSet:
    """E_{A_i A_j}: the edges joining part i to part j."""
    _check_part(g, i)
    _check_part(g, j)
    if i == j:
        raise ValueError("edge_set_between needs two distinct parts")
    pi = g.part_index
    want = {i, j}
    return EdgeSet(g, frozenset(e for e in g.edges if {pi[e[0]], pi[e[1]]} == want))


def incident_edges(g: PartitionedGraph, v: str) -> EdgeSet:
    """E(v)."""
    if v not in g.part_index:
        raise ValueError(f"unknown vertex {v!r}")
    return EdgeSet(g, frozenset(e for e in g.edges if v in e))


def induced(g: PartitionedGraph, vs: Iterable[str]) -> PartitionedGraph:
    """Subgraph induced by ``vs``; parts left empty are dropped."""
    keep = set(vs)
    unknown = keep - set(g.part_index)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    parts, names = [], []
    for p, part in enumerate(g.parts):
        kept = tuple(v for v in part if v in keep)
        if kept:
            parts.append(kept)
            names.append(g.part_name(p))
    edges = tuple(e for e in g.edges if e[0] in keep and e[1] in keep)
    return PartitionedGraph(tuple(parts), edges, tuple(names) if g.names is not None else None)


def part_by_name(g: PartitionedGraph, name: str) -> int:
    if g.names is None or name not in g.names:
        raise ValueError(f"graph has no part named {name!r}")
    return g.names.index(name)
