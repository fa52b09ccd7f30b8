"""Census of the good drawings of tiny graphs, face analysis, and the counting inequality.

Drawings are combinatorial maps on the sphere: rotation systems of the
planarization, with each crossing a degree-4 dummy whose two edges alternate.
They are generated by adding the edges one at a time.  A new edge leaves its
start vertex at some corner, then walks face to face, crossing one boundary
segment per step, and ends at a corner of its other endpoint (or places that
endpoint in the current face when it is new).  Every good drawing is reached
this way, because deleting its last edge leaves a good drawing of the rest.

Face tracing convention: dart (a, b) is followed by (b, c) where c is the
successor of a in b's rotation.  Inserting t after p in b's rotation puts t
in the face of dart (p, b).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .formulas import family_formula
from .geometry import Drawing, count_crossings
from .graph import Edge, PartitionedGraph, adjacent, edge_set_between, incident_edges, union
from .solver import CrossingConfiguration, dummy_name, euler_consistent, trace_faces

MAX_VERTICES = 6
MAX_EDGES = 10

SPHERE = "sphere"  # reflections identified
ORIENTED = "oriented-sphere"  # reflections distinct
PLANE = "plane"  # reflections identified, outer face distinguished
EQUIVALENCES = (SPHERE, ORIENTED, PLANE)


@dataclass(frozen=True)
class Face:
    darts: tuple[tuple[str, str], ...]
    boundary: frozenset[str]  # original vertices on the boundary

    @property
    def count(self) -> int:
        return len(self.boundary)


@dataclass(eq=False)
class DrawingClass:
    graph: PartitionedGraph
    configuration: CrossingConfiguration
    rotation: dict[str, tuple[str, ...]]
    code: str
    crossings: int
    outer: Optional[tuple] = None  # distinguished face, plane equivalence only
    _faces: Optional[list[Face]] = field(default=None, repr=False)

    def face_profile(self) -> list[int]:
        return sorted((f.count for f in faces(self)), reverse=True)


def faces(dc: DrawingClass) -> list[Face]:
    if dc._faces is None:
        originals = set(dc.graph.vertices)
        out = []
        for darts in trace_faces(dc.rotation):
            out.append(Face(tuple(darts), frozenset(a for a, _ in darts if a in originals)))
        dc._faces = out
    return dc._faces


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------


def _code_from(rotation, colour, start: tuple, mirror: bool) -> tuple:
    label = {start[0]: 0}
    queue = [(start[0], start[1])]
    out = []
    i = 0
    while i < len(queue):
        v, ref = queue[i]
        i += 1
        rot = rotation[v]
        if mirror:
            rot = rot[::-1]
        k = rot.index(ref)
        seq = rot[k:] + rot[:k]
        row = [colour(v)]
        for w in seq:
            if w not in label:
                label[w] = len(label)
                queue.append((w, v))
            row.append(label[w])
        out.append(tuple(row))
    return tuple(out)


def canonical_code(rotation, originals, equivalence: str = SPHERE, outer=None) -> str:
    """Code of a connected map, equal exactly for isomorphic maps.

    Vertices are coloured original / dummy; the code is the least BFS encoding
    over all starting darts (and both orientations unless ``ORIENTED``).
    For ``PLANE`` the start dart is restricted to the given outer face, which
    pins that face down.
    """
    def colour(v):
        return 0 if v in originals else 1

    mirrors = (False,) if equivalence == ORIENTED else (False, True)
    if equivalence == PLANE:
        if outer is None:
            raise ValueError("plane codes need an outer face")
        mirrored = {v: r[::-1] for v, r in rotation.items()}
        best = None
        for a, b in outer:
            for rot, dart in ((rotation, (a, b)), (mirrored, (b, a))):
                code = _code_from(rot, colour, dart, False)
                if best is None or code < best:
                    best = code
        return repr(best)
    best = None
    for a, ns in rotation.items():
        for b in ns:
            for mirror in mirrors:
                code = _code_from(rotation, colour, (a, b), mirror)
                if best is None or code < best:
                    best = code
    return repr(best)


def _labeled_code(rotation) -> tuple:
    out = []
    for v in sorted(rotation):
        rot = rotation[v]
        if rot:
            k = rot.index(min(rot))
            rot = rot[k:] + rot[:k]
        out.append((v, rot))
    return tuple(out)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Map:
    rotation: dict  # vertex -> tuple
    owner: dict  # frozenset({a, b}) -> original edge
    paths: dict  # original edge -> tuple of derived vertices from e[0]
    crossings: int


def _face_of(rotation, dart) -> list[tuple]:
    face = []
    a, b = dart
    while True:
        face.append((a, b))
        rb = rotation[b]
        a, b = b, rb[(rb.index(a) + 1) % len(rb)]
        if (a, b) == dart:
            return face


def _insert_after(rot: tuple, p, t) -> tuple:
    if p is None:
        return (t,)
    k = rot.index(p)
    return rot[:k + 1] + (t,) + rot[k + 1:]


def _edge_order(g: PartitionedGraph) -> list[Edge]:
    """Edges in an order where each edge touches an earlier-placed vertex."""
    placed = {g.vertices[0]}
    todo = list(g.edges)
    out = []
    while todo:
        for e in todo:
            if e[0] in placed or e[1] in placed:
                out.append(e)
                todo.remove(e)
                placed.update(e)
                break
        else:
            raise ValueError("census needs a connected graph")
    return out


def _route(g, m: _Map, e: Edge, start: str, end: str, max_total: int):
    """All maps obtained by drawing e from ``start`` to ``end`` in m."""
    end_placed = end in m.rotation
    rotation0 = m.rotation

    # corners at the start vertex: (p, dart p->start) or the empty rotation
    if rotation0[start]:
        corners = [(p, _face_of(rotation0, (p, start))) for p in rotation0[start]]
    else:
        corners = [(None, [])]

    def walk(rotation, owner, paths, path, crossed, tip, p, face, ncross):
        # finish in this face
        if end_placed:
            for q, w in face:
                if w == end:
                    rot = dict(rotation)
                    rot[tip] = _insert_after(rot[tip], p, end)
                    rot[end] = _insert_after(rot[end], q, tip)
                    own = dict(owner)
                    own[frozenset((tip, end))] = e
                    yield _finish(rot, own, paths, e, path + (end,), ncross)
        else:
            rot = dict(rotation)
            rot[tip] = _insert_after(rot[tip], p, end)
            rot[end] = (tip,)
            own = dict(owner)
            own[frozenset((tip, end))] = e
            yield _finish(rot, own, paths, e, path + (end,), ncross)
        if ncross >= max_total:
            return
        for a, b in face:
            f = owner[frozenset((a, b))]
            if f == e or adjacent(e, f) or f in crossed:
                continue
            key = (e, f) if g.edge_key(e) < g.edge_key(f) else (f, e)
            d = dummy_name(*key)
            rot = dict(rotation)
            rot[a] = tuple(d if x == b else x for x in rot[a])
            rot[b] = tuple(d if x == a else x for x in rot[b])
            rot[d] = (a, tip, b)
            rot[tip] = _insert_after(rot[tip], p, d)
            own = dict(owner)
            del own[frozenset((a, b))]
            own[frozenset((a, d))] = f
            own[frozenset((d, b))] = f
            own[frozenset((tip, d))] = e
            fp = paths[f]
            k = next(i for i in range(len(fp) - 1) if {fp[i], fp[i + 1]} == {a, b})
            pths = dict(paths)
            pths[f] = fp[:k + 1] + (d,) + fp[k + 1:]
            yield from walk(rot, own, pths, path + (d,), crossed | {f}, d, b,
                            _face_of(rot, (b, d)), ncross + 1)

    for p, face in corners:
        yield from walk(rotation0, m.owner, m.paths, (start,), frozenset(), start, p, face, m.crossings)


def _finish(rot, own, paths, e, path, ncross) -> _Map:
    pths = dict(paths)
    pths[e] = path if path[0] == e[0] else path[::-1]
    return _Map(rot, own, pths, ncross)


def _check_scale(g: PartitionedGraph, force: bool) -> None:
    if force:
        return
    if len(g.vertices) > MAX_VERTICES or len(g.edges) > MAX_EDGES:
        pairs = sum(1 for e, f in itertools.combinations(g.edges, 2) if not adjacent(e, f))
        raise ValueError(
            f"graph too large for a census ({len(g.vertices)} vertices, {len(g.edges)} edges, "
            f"{pairs} independent pairs, up to {len(g.vertices) + pairs} derived vertices); "
            f"limit is {MAX_VERTICES} vertices and {MAX_EDGES} edges"
        )


def enumerate_maps(g: PartitionedGraph, max_crossings: Optional[int] = None, force: bool = False) -> list[_Map]:
    """Every good drawing of g as a labelled map, reflections merged."""
    _check_scale(g, force)
    if max_crossings is None:
        max_crossings = sum(1 for e, f in itertools.combinations(g.edges, 2) if not adjacent(e, f))
    root = _edge_order(g)[0][0] if g.edges else g.vertices[0]
    level = [_Map({root: ()}, {}, {}, 0)]
    for e in _edge_order(g):
        start, end = (e[0], e[1]) if e[0] in level[0].rotation else (e[1], e[0])
        nxt: dict = {}
        for m in level:
            for m2 in _route(g, m, e, start, end, max_crossings):
                key = min(_labeled_code(m2.rotation), _labeled_code({v: r[::-1] for v, r in m2.rotation.items()}))
                nxt.setdefault(key, m2)
        level = [nxt[k] for k in sorted(nxt)]
    return level


def map_configuration(g: PartitionedGraph, m: _Map) -> CrossingConfiguration:
    dummies = {}
    for e, path in m.paths.items():
        for v in path[1:-1]:
            dummies.setdefault(v, []).append(e)
    order = {}
    for e, path in m.paths.items():
        seq = tuple(next(f for f in dummies[v] if f != e) for v in path[1:-1])
        if seq:
            order[e] = seq
    return CrossingConfiguration(g, order)


def enumerate_drawings(
    g: PartitionedGraph, max_crossings: Optional[int] = None, equivalence: str = SPHERE, force: bool = False
) -> list[DrawingClass]:
    """One representative per isomorphism class of good drawings with at most ``max_crossings`` crossings.

    Two drawings are isomorphic when their planarization maps are, with
    original vertices sent to original vertices; this includes relabelling by
    any automorphism of g.  ``equivalence`` selects whether reflections are
    identified and whether the outer face is distinguished.
    """
    if equivalence not in EQUIVALENCES:
        raise ValueError(f"equivalence must be one of {EQUIVALENCES}")
    originals = frozenset(g.vertices)
    classes: dict[str, DrawingClass] = {}
    for m in enumerate_maps(g, max_crossings, force):
        if not euler_consistent(m.rotation):
            raise AssertionError("enumerated map is not planar")
        # the labelled maps were merged with their mirror images
        variants = [(m.rotation, None)]
        if equivalence == ORIENTED:
            variants.append(({v: r[::-1] for v, r in m.rotation.items()}, None))
        elif equivalence == PLANE:
            variants = [(m.rotation, face) for face in trace_faces(m.rotation)]
        for rot, outer in variants:
            code = canonical_code(rot, originals, equivalence, outer)
            if code not in classes:
                dc = DrawingClass(g, map_configuration(g, m), dict(rot), code, m.crossings)
                if outer is not None:
                    dc.outer = tuple(outer)
                classes[code] = dc
    return sorted(classes.values(), key=lambda c: (c.crossings, c.code))


def alternates(rotation, dummies: dict[str, tuple[Edge, Edge]], owner) -> bool:
    """At every dummy, the fragments of its two edges sit opposite each other."""
    for d in dummies:
        rot = rotation[d]
        if len(rot) != 4:
            return False
        if owner[frozenset((d, rot[0]))] != owner[frozenset((d, rot[2]))]:
            return False
    return True


# ---------------------------------------------------------------------------
# lemma checks
# ---------------------------------------------------------------------------


def rich_faces(dc: DrawingClass, at_least: int) -> list[Face]:
    return [f for f in faces(dc) if f.count >= at_least]


@dataclass
class RegionReport:
    k23_classes: int
    k23_by_crossings: dict[int, int]
    k122_classes: int
    lemma21_counterexamples: list[str]
    lemma22_count: int
    per_equivalence: dict[str, dict[str, int]]

    @property
    def passed(self) -> bool:
        return self.k23_classes == 6 and not self.lemma21_counterexamples and self.lemma22_count == 3

    def to_json(self) -> dict:
        return {
            "k23_classes": self.k23_classes,
            "k23_by_crossings": {str(k): v for k, v in sorted(self.k23_by_crossings.items())},
            "k122_classes": self.k122_classes,
            "at_most_one_rich_face": {"counterexamples": self.lemma21_counterexamples,
                                      "pass": not self.lemma21_counterexamples},
            "classes_with_face_on_all_vertices": self.lemma22_count,
            "per_equivalence": self.per_equivalence,
            "pass": self.passed,
        }


def verify_region_lemmas() -> RegionReport:
    """Census of K_{2,3} and K_{1,2,2} with the face-boundary checks.

    Every K_{1,2,2} class may have at most one face with 4 or more vertices
    on its boundary, and exactly 3 classes have a face with all 5.
    """
    from .graph import complete_multipartite

    k23 = complete_multipartite([2, 3], ["A", "B"])
    k122 = complete_multipartite([1, 2, 2], ["X", "Y", "U"])
    per_eq: dict[str, dict[str, int]] = {}
    by_eq = {}
    for eq in EQUIVALENCES:
        a = enumerate_drawings(k23, equivalence=eq)
        b = enumerate_drawings(k122, equivalence=eq)
        by_eq[eq] = (a, b)
        per_eq[eq] = {
            "K23": len(a),
            "K122": len(b),
            "K122_all_five": sum(1 for c in b if rich_faces(c, 5)),
        }
    a, b = by_eq[SPHERE]
    bad = [c.code for c in b if len(rich_faces(c, 4)) > 1]
    return RegionReport(
        k23_classes=len(a),
        k23_by_crossings=dict(Counter(c.crossings for c in a)),
        k122_classes=len(b),
        lemma21_counterexamples=bad,
        lemma22_count=per_eq[SPHERE]["K122_all_five"],
        per_equivalence=per_eq,
    )


# ---------------------------------------------------------------------------
# counting inequality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InequalityCheck:
    family: str
    n: int
    lhs: int
    rhs: int
    cr_xy: int

    @property
    def precondition(self) -> bool:
        return self.cr_xy == 0

    @property
    def holds(self) -> bool:
        return self.precondition and self.lhs >= self.rhs


def _pair_counter(pairs):
    def count(a, b=None):
        sa, sb = a.ids, (a.ids if b is None else b.ids)
        if b is None:
            return sum(1 for e, f in pairs if e in sa and f in sa)
        return sum(1 for e, f in pairs if (e in sa and f in sb) or (f in sa and e in sb))
    return count


def check_counting_inequality(
    d: Union[Drawing, DrawingClass, CrossingConfiguration], family: str
) -> InequalityCheck:
    """Average over the n drawings obtained by deleting one Z vertex.

    With no crossings among the X-Y edges,
    (n-1) cr(E_XY, E_Z) + (n-2) cr(E_Z) >= n cr(family at n-1),
    where E_Z is the union of the Z-vertex stars.  ``d`` is a geometric
    drawing, a census class or a bare crossing configuration.
    """
    if family not in ("K13n", "K14n"):
        raise ValueError("counting inequality is implemented for K13n and K14n")
    g = d.graph
    if g.names is None or tuple(g.names) != ("X", "Y", "Z"):
        raise ValueError("drawing must use the X, Y, Z partition")
    expected = (1, 3) if family == "K13n" else (1, 4)
    if (len(g.parts[0]), len(g.parts[1])) != expected:
        raise ValueError(f"drawing is not a member of {family}")
    n = len(g.parts[2])
    if n < 2:
        raise ValueError("counting inequality needs n >= 2")
    if isinstance(d, DrawingClass):
        count = _pair_counter(d.configuration.pairs)
    elif isinstance(d, CrossingConfiguration):
        count = _pair_counter(d.pairs)
    else:
        def count(a, b=None):
            return count_crossings(d, a, b)
    exy = edge_set_between(g, 0, 1)
    ez = union(g, (incident_edges(g, z) for z in g.parts[2]))
    cr_xy = count(exy)
    lhs = (n - 1) * count(exy, ez) + (n - 2) * count(ez)
    rhs = n * family_formula(family, n - 1).value
    return InequalityCheck(family, n, lhs, rhs, cr_xy)
