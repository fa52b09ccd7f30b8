"""Exact crossing numbers of small graphs by searching crossing configurations.

A configuration lists which independent edge pairs cross and in which order
the crossings sit along each edge.  Replacing every crossing by a degree-4
dummy vertex gives the planarization; a drawing with those crossings exists
iff the planarization is planar (ignoring whether the dummies alternate,
which can only over-count, see ``exact_crossing_number``).

The search is iterative deepening on the number of crossings.  At a
configuration whose planarization is not planar it takes a Kuratowski
subdivision K of the planarization: any planar extension must add a crossing
between two segments of K, so only those pairs are branched on.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import networkx as nx

from .formulas import best_lower_bound, match_family
from .graph import Edge, PartitionedGraph, adjacent

Rotation = dict  # vertex -> list of neighbours in cyclic order


# ---------------------------------------------------------------------------
# configurations and planarizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CrossingConfiguration:
    """Crossing data of a good drawing.

    ``order[e]`` lists the edges crossing e, in order from e[0] to e[1]; edges
    without crossings are absent.
    """

    graph: PartitionedGraph
    order: Mapping[Edge, tuple[Edge, ...]]

    def __post_init__(self) -> None:
        g = self.graph
        for e, seq in self.order.items():
            if e not in g.edge_set:
                raise ValueError(f"{e} is not an edge")
            if len(set(seq)) != len(seq):
                raise ValueError(f"edge {e} crosses some edge twice")
            for f in seq:
                if f not in g.edge_set:
                    raise ValueError(f"{f} is not an edge")
                if adjacent(e, f):
                    raise ValueError(f"adjacent edges {e} and {f} cannot cross")
                if e not in self.order.get(f, ()):
                    raise ValueError(f"order of {f} does not list its crossing with {e}")

    @classmethod
    def from_pairs(
        cls,
        graph: PartitionedGraph,
        pairs: Iterable[tuple[Edge, Edge]],
        orders: Optional[Mapping[Edge, Sequence[Edge]]] = None,
    ) -> "CrossingConfiguration":
        partners: dict[Edge, list[Edge]] = {}
        for e, f in pairs:
            e, f = graph.edge(*e), graph.edge(*f)
            partners.setdefault(e, []).append(f)
            partners.setdefault(f, []).append(e)
        orders = orders or {}
        out = {}
        for e, fs in partners.items():
            if e in orders:
                seq = tuple(graph.edge(*f) for f in orders[e])
                if sorted(seq, key=graph.edge_key) != sorted(fs, key=graph.edge_key):
                    raise ValueError(f"order for {e} does not match its crossing pairs")
            else:
                seq = tuple(sorted(fs, key=graph.edge_key))
            out[e] = seq
        return cls(graph, out)

    @property
    def pairs(self) -> list[tuple[Edge, Edge]]:
        key = self.graph.edge_key
        out = {(e, f) if key(e) < key(f) else (f, e) for e, seq in self.order.items() for f in seq}
        return sorted(out, key=lambda p: (key(p[0]), key(p[1])))

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CrossingConfiguration)
            and other.graph is self.graph
            and dict(other.order) == dict(self.order)
        )

    def to_json(self) -> dict:
        return {
            "pairs": [[list(e), list(f)] for e, f in self.pairs],
            "order": {f"{e[0]}-{e[1]}": [f"{f[0]}-{f[1]}" for f in seq]
                      for e, seq in sorted(self.order.items(), key=lambda t: self.graph.edge_key(t[0]))},
        }


def dummy_name(e: Edge, f: Edge) -> str:
    return f"x[{e[0]}-{e[1]}|{f[0]}-{f[1]}]"


@dataclass
class Planarization:
    graph: PartitionedGraph
    vertices: list[str]
    edges: list[tuple[str, str]]
    dummies: dict[str, tuple[Edge, Edge]]
    paths: dict[Edge, tuple[str, ...]]  # original edge -> derived vertices from e[0] to e[1]
    segment_of: dict[frozenset, tuple[Edge, int]] = field(repr=False, default_factory=dict)

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(self.vertices)
        h.add_edges_from(self.edges)
        return h


def planarize(g: PartitionedGraph, cfg: CrossingConfiguration) -> Planarization:
    if cfg.graph is not g:
        raise ValueError("configuration belongs to another graph")
    key = g.edge_key
    dummies: dict[str, tuple[Edge, Edge]] = {}
    for e, f in cfg.pairs:
        dummies[dummy_name(e, f)] = (e, f)
    names = {frozenset(p): nm for nm, p in dummies.items()}
    paths, edges, segment_of = {}, [], {}
    for e in g.edges:
        seq = cfg.order.get(e, ())
        path = (e[0], *(names[frozenset((e, f))] for f in seq), e[1])
        paths[e] = path
        for i in range(len(path) - 1):
            edges.append((path[i], path[i + 1]))
            segment_of[frozenset(path[i:i + 2])] = (e, i)
    for nm, (e, f) in dummies.items():
        if names[frozenset((e, f))] not in paths[e] or nm not in paths[f]:
            raise ValueError(f"inconsistent order sequences around {nm}")
    vertices = list(g.vertices) + sorted(dummies, key=lambda nm: (key(dummies[nm][0]), key(dummies[nm][1])))
    return Planarization(g, vertices, edges, dummies, paths, segment_of)


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------


@dataclass
class PlanarityResult:
    planar: bool
    rotation: Optional[Rotation] = None

    def __bool__(self) -> bool:
        return self.planar


def trace_faces(rotation: Mapping) -> list[list[tuple]]:
    """Faces of a rotation system as lists of darts (u, v).

    The face after dart (u, v) continues with (v, w), w the successor of u in
    v's cyclic order.
    """
    pos = {v: {w: i for i, w in enumerate(ns)} for v, ns in rotation.items()}
    seen = set()
    faces = []
    for u, ns in rotation.items():
        for v in ns:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                rb = rotation[b]
                a, b = b, rb[(pos[b][a] + 1) % len(rb)]
            faces.append(face)
    return faces


def euler_consistent(rotation: Mapping) -> bool:
    """V - E + F = 2 on every connected component."""
    comp: dict = {}
    for s in rotation:
        if s in comp:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in rotation[x]:
                if y not in comp:
                    comp[y] = s
                    stack.append(y)
    v_count: dict = {}
    e_count: dict = {}
    f_count: dict = {}
    for v, ns in rotation.items():
        c = comp[v]
        v_count[c] = v_count.get(c, 0) + 1
        e_count[c] = e_count.get(c, 0) + len(ns)
    for face in trace_faces(rotation):
        c = comp[face[0][0]]
        f_count[c] = f_count.get(c, 0) + 1
    return all(
        v_count[c] - e_count[c] // 2 + max(f_count.get(c, 0), 1) == 2 for c in v_count
    )


def _as_networkx(g) -> nx.Graph:
    if isinstance(g, nx.Graph):
        return g
    if isinstance(g, Planarization):
        return g.to_networkx()
    h = nx.Graph()
    if isinstance(g, PartitionedGraph):
        h.add_nodes_from(g.vertices)
        h.add_edges_from(g.edges)
    else:
        h.add_edges_from(g)
    return h


def is_planar(g) -> PlanarityResult:
    """Planarity verdict plus a rotation system when planar.

    ``g`` may be a PartitionedGraph, a Planarization, a networkx graph or an
    iterable of edges.  The rotation system is checked against Euler's formula
    by face tracing before it is returned.
    """
    h = _as_networkx(g)
    planar, emb = nx.check_planarity(h)
    if not planar:
        return PlanarityResult(False)
    rotation = {v: list(ns) for v, ns in emb.get_data().items()}
    for v in h.nodes:
        rotation.setdefault(v, [])
    if not euler_consistent(rotation):
        raise AssertionError("planarity backend returned a non-planar rotation system")
    return PlanarityResult(True, rotation)


def realizable(g: PartitionedGraph, cfg: CrossingConfiguration) -> PlanarityResult:
    """Whether some drawing of g has exactly the crossings of ``cfg``."""
    return is_planar(planarize(g, cfg))


def _quick_planar(edges: Sequence[tuple]) -> bool:
    h = nx.Graph()
    h.add_edges_from(edges)
    n, m = h.number_of_nodes(), h.number_of_edges()
    if n >= 3 and m > 3 * n - 6:
        return False
    return nx.check_planarity(h)[0]


def _reduce(edges: Sequence[tuple]) -> list[tuple[tuple, tuple, tuple[int, ...]]]:
    """Strip pendant trees and smooth degree-2 vertices.

    Returns chains (end, end, indices into ``edges``); parallel chains and
    loops are dropped since they never change planarity.
    """
    adj: dict = {}
    for i, (u, v) in enumerate(edges):
        adj.setdefault(u, {}).setdefault(v, []).append(i)
        adj.setdefault(v, {}).setdefault(u, []).append(i)
    deg = {v: sum(len(x) for x in nb.values()) for v, nb in adj.items()}
    alive = set(range(len(edges)))
    stack = [v for v, d in deg.items() if d <= 1]
    while stack:
        v = stack.pop()
        if deg.get(v, 0) > 1 or v not in adj:
            continue
        for w, idx in list(adj[v].items()):
            for i in idx:
                alive.discard(i)
                deg[w] -= 1
            del adj[w][v]
            if deg[w] == 1:
                stack.append(w)
        del adj[v]
        deg[v] = 0
    chains = []
    used = set()
    for v in adj:
        if deg[v] == 2:
            continue
        for w, idx in adj[v].items():
            for i in idx:
                if i in used:
                    continue
                chain = [i]
                used.add(i)
                cur = w
                while deg[cur] == 2:
                    step = next(((x, j) for x, js in adj[cur].items() for j in js if j not in used), None)
                    if step is None:
                        break
                    cur, j = step
                    used.add(j)
                    chain.append(j)
                chains.append((v, cur, tuple(chain)))
    out, seen = [], set()
    for a, b, chain in chains:
        if a == b:
            continue
        k = frozenset((a, b))
        if k in seen:
            continue
        seen.add(k)
        out.append((a, b, chain))
    return out


def kuratowski_edges(edges: Sequence[tuple]) -> Optional[list[int]]:
    """Indices of a minimal non-planar subgraph (a Kuratowski subdivision), or None if planar."""
    chains = _reduce(edges)
    ends = [(a, b) for a, b, _ in chains]
    if _quick_planar(ends):
        return None
    keep = list(range(len(chains)))
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if not _quick_planar([ends[j] for j in trial]):
            keep = trial
        else:
            i += 1
    return sorted(idx for j in keep for idx in chains[j][2])


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

MAX_GROUP = 5040


def automorphisms(g: PartitionedGraph) -> list[dict[str, str]]:
    """Vertex permutations that permute parts of equal size and vertices within parts,
    filtered to those preserving the edge set.  Falls back to the identity when
    the group would exceed MAX_GROUP elements."""
    by_size: dict[int, list[int]] = {}
    for p, part in enumerate(g.parts):
        by_size.setdefault(len(part), []).append(p)
    size = 1
    for s, ps in by_size.items():
        size *= _factorial(len(ps)) * _factorial(s) ** len(ps)
    if size > MAX_GROUP:
        return [{v: v for v in g.vertices}]
    part_maps = [list(itertools.permutations(ps)) for ps in by_size.values()]
    groups = list(by_size.values())
    out = []
    for choice in itertools.product(*part_maps):
        target = {}
        for ps, img in zip(groups, choice):
            for p, q in zip(ps, img):
                target[p] = q
        within = [list(itertools.permutations(g.parts[target[p]])) for p in range(len(g.parts))]
        for perms in itertools.product(*within):
            sigma = {}
            for p, img in enumerate(perms):
                for v, w in zip(g.parts[p], img):
                    sigma[v] = w
            if all(g.edge_set.__contains__(_sorted_edge(g, sigma[u], sigma[v])) for u, v in g.edges):
                out.append(sigma)
    return out


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _sorted_edge(g: PartitionedGraph, u: str, v: str) -> Edge:
    return (u, v) if g.order[u] < g.order[v] else (v, u)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


class BudgetExhausted(Exception):
    pass


class _Engine:
    """Integer-indexed search state shared by the serial and parallel drivers.

    A state is a tuple over edges of tuples of partner edge indices.
    """

    def __init__(self, g: PartitionedGraph, deadline: Optional[float] = None, pack_depth: int = 2):
        self.g = g
        self.edges = list(g.edges)
        self.m = len(self.edges)
        self.vidx = {v: i for i, v in enumerate(g.vertices)}
        self.nv = len(self.vidx)
        self.eidx = {e: i for i, e in enumerate(self.edges)}
        self.ends = [(self.vidx[u], self.vidx[v]) for u, v in self.edges]
        self.indep = [[not (set(self.ends[a]) & set(self.ends[b])) for b in range(self.m)] for a in range(self.m)]
        self.perms = []
        for sigma in automorphisms(g):
            emap, flip = [], []
            for u, v in self.edges:
                img = _sorted_edge(g, sigma[u], sigma[v])
                emap.append(self.eidx[img])
                flip.append(img[0] != sigma[u])
            self.perms.append((emap, flip))
        self.deadline = deadline
        self.pack_depth = pack_depth
        self.nodes = 0
        self.dead: set = set()

    def empty(self) -> tuple:
        return tuple(() for _ in range(self.m))

    def canon(self, state: tuple) -> tuple:
        best = None
        for emap, flip in self.perms:
            img = [()] * self.m
            for e, seq in enumerate(state):
                if seq:
                    mapped = tuple(emap[f] for f in seq)
                    img[emap[e]] = mapped[::-1] if flip[e] else mapped
            t = tuple(img)
            if best is None or t < best:
                best = t
        return best

    def derived(self, state: tuple):
        """Planarization edges, plus segment ownership (edge index, segment index) per derived edge."""
        dummy = {}
        nxt = self.nv
        out, owner = [], []
        for e, seq in enumerate(state):
            a, b = self.ends[e]
            pts = [a]
            for f in seq:
                k = (e, f) if e < f else (f, e)
                if k not in dummy:
                    dummy[k] = nxt
                    nxt += 1
                pts.append(dummy[k])
            pts.append(b)
            for i in range(len(pts) - 1):
                out.append((pts[i], pts[i + 1]))
                owner.append((e, i))
        return out, owner

    def insert(self, state: tuple, e: int, i: int, f: int, j: int) -> tuple:
        s = list(state)
        s[e] = s[e][:i] + (f,) + s[e][i:]
        s[f] = s[f][:j] + (e,) + s[f][j:]
        return tuple(s)

    def _check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def candidates(self, state: tuple, kedges: list[int], owner) -> list[tuple]:
        segs = sorted({owner[i] for i in kedges})
        out = []
        for (e, i), (f, j) in itertools.combinations(segs, 2):
            if e == f or not self.indep[e][f] or f in state[e]:
                continue
            out.append(self.insert(state, e, i, f, j))
        return out

    def packing_exceeds(self, edges, kedges: list[int], remaining: int) -> bool:
        """True when more than ``remaining`` segment-disjoint non-planar subgraphs exist."""
        rest = set(range(len(edges))) - set(kedges)
        found = 1
        for _ in range(self.pack_depth):
            sub = [edges[i] for i in sorted(rest)]
            if found > remaining:
                return True
            if found == remaining:
                return not _quick_planar(sub)
            k2 = kuratowski_edges(sub)
            if k2 is None:
                return False
            idx = sorted(rest)
            rest -= {idx[i] for i in k2}
            found += 1
        return found > remaining

    def dfs(self, state: tuple, used: int, k: int) -> Optional[tuple]:
        self._check_time()
        key = self.canon(state)
        if key in self.dead:
            return None
        self.nodes += 1
        edges, owner = self.derived(state)
        if used == k:
            if _quick_planar(edges):
                return state
            self.dead.add(key)
            return None
        kedges = kuratowski_edges(edges)
        if kedges is None:
            return state
        if self.pack_depth and self.packing_exceeds(edges, kedges, k - used):
            self.dead.add(key)
            return None
        for child in self.candidates(state, kedges, owner):
            found = self.dfs(child, used + 1, k)
            if found is not None:
                return found
        self.dead.add(key)
        return None

    def root_children(self, k: int) -> Optional[list[tuple]]:
        """None when the empty configuration already decides level k."""
        edges, owner = self.derived(self.empty())
        kedges = kuratowski_edges(edges)
        if kedges is None or k == 0:
            return None
        return self.candidates(self.empty(), kedges, owner)

    def to_config(self, state: tuple) -> CrossingConfiguration:
        order = {self.edges[e]: tuple(self.edges[f] for f in seq) for e, seq in enumerate(state) if seq}
        return CrossingConfiguration(self.g, order)


def _branch_worker(args):
    g, k, child, deadline, pack_depth = args
    eng = _Engine(g, deadline, pack_depth)
    try:
        found = eng.dfs(child, 1, k)
    except BudgetExhausted:
        return ("budget", None, eng.nodes)
    return ("done", found, eng.nodes)


@dataclass
class ExactResult:
    k: int
    witness: CrossingConfiguration
    lower_bound: int
    elapsed: float
    nodes: int
    exhausted_levels: list[int]

    exact = True


@dataclass
class BoundReport:
    lower: int
    upper: Optional[int]
    elapsed: float
    nodes: int
    reason: str

    exact = False


def known_upper_bound(g: PartitionedGraph) -> Optional[int]:
    """Crossing count of a constructed drawing, when g is a catalogued complete multipartite graph."""
    from .constructions import construct_family, zarankiewicz_drawing
    from .formulas import CONSTRUCTED
    from .geometry import total_crossings

    entry = match_family(g)
    if entry is None:
        return None
    if entry.family in CONSTRUCTED:
        return total_crossings(construct_family(entry.family, entry.n))
    if len(g.parts) == 2:
        a, b = (len(p) for p in g.parts)
        return total_crossings(zarankiewicz_drawing(a, b))
    return None


def exact_crossing_number(
    g: PartitionedGraph,
    budget: Optional[float] = 600.0,
    max_k: Optional[int] = None,
    threads: int = 1,
    start_k: Optional[int] = None,
    pack_depth: int = 2,
) -> Union[ExactResult, BoundReport]:
    """cr(g) with a witness configuration, or the proven interval if the budget runs out.

    Levels k = start, start+1, ... are searched in turn (start defaults to
    best_lower_bound).  The first level with a planar planarization is cr(g):
    a planar embedding whose dummies do not all alternate still yields a
    drawing with at most k crossings, and every lower level was refuted.
    """
    t0 = time.monotonic()
    deadline = None if budget is None else t0 + budget
    lb = best_lower_bound(g)
    k = lb if start_k is None else start_k
    exhausted: list[int] = []
    nodes = 0
    proven_lower = k if start_k is None else 0
    eng = _Engine(g, deadline, pack_depth)
    try:
        while max_k is None or k <= max_k:
            eng.dead = set()
            children = eng.root_children(k)
            found = None
            if children is None:
                found = eng.dfs(eng.empty(), 0, k)
            elif threads <= 1:
                found = eng.dfs(eng.empty(), 0, k)
            else:
                found = _parallel_level(g, k, children, deadline, pack_depth, threads)
                if found == "budget":
                    raise BudgetExhausted
            if found is not None:
                cfg = eng.to_config(found)
                return ExactResult(len(cfg), cfg, lb, time.monotonic() - t0, eng.nodes, exhausted)
            exhausted.append(k)
            proven_lower = k + 1
            k += 1
    except BudgetExhausted:
        return BoundReport(max(proven_lower, lb), known_upper_bound(g), time.monotonic() - t0, eng.nodes,
                           "time budget exhausted")
    return BoundReport(max(proven_lower, lb), known_upper_bound(g), time.monotonic() - t0, eng.nodes,
                       f"no drawing with at most {max_k} crossings")


def _parallel_level(g, k, children, deadline, pack_depth, threads):
    # the lowest-index successful branch wins, matching the serial DFS order
    jobs = [(g, k, c, deadline, pack_depth) for c in children]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_branch_worker, jobs))
    for status, found, _ in results:
        if status == "budget":
            return "budget"
        if found is not None:
            return found
    return None
