"""Exact-rational polyline drawings, the good-drawing validator, and cr_phi queries."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from .graph import Edge, EdgeSet, PartitionedGraph, adjacent

Rational = Fraction
Point = tuple[Fraction, Fraction]

DRAWING_FORMAT = "crossing-drawing/1"


class InvalidDrawing(ValueError):
    """Raised when a crossing query is made on a drawing that is not good."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        head = "; ".join(self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"drawing is not good: {head}{more}")


def point(x: Union[int, str, Fraction], y: Union[int, str, Fraction]) -> Point:
    return (Fraction(x), Fraction(y))


@dataclass(frozen=True, eq=False)
class Drawing:
    """Vertex positions plus one polyline per edge (endpoints included)."""

    graph: PartitionedGraph
    positions: Mapping[str, Point]
    routes: Mapping[Edge, tuple[Point, ...]]

    def __post_init__(self) -> None:
        missing = [v for v in self.graph.vertices if v not in self.positions]
        if missing:
            raise ValueError(f"unpositioned vertices: {missing}")
        for e in self.graph.edges:
            if e not in self.routes:
                raise ValueError(f"edge {e} has no route")
            pts = self.routes[e]
            if len(pts) < 2 or pts[0] != self.positions[e[0]] or pts[-1] != self.positions[e[1]]:
                raise ValueError(f"route of {e} must run from {e[0]} to {e[1]}")
        extra = set(self.routes) - self.graph.edge_set
        if extra:
            raise ValueError(f"routes for non-edges: {sorted(extra)[:3]}")

    @classmethod
    def from_bends(
        cls,
        graph: PartitionedGraph,
        positions: Mapping[str, Point],
        bends: Optional[Mapping[Edge, Sequence[Point]]] = None,
    ) -> "Drawing":
        bends = bends or {}
        routes = {}
        for e in graph.edges:
            routes[e] = (positions[e[0]], *bends.get(e, ()), positions[e[1]])
        return cls(graph, dict(positions), routes)

    @cached_property
    def report(self) -> "CrossingReport":
        return validate(self)

    def transformed(self, a: Fraction, b: Fraction, c: Fraction, d: Fraction,
                    tx: Fraction = Fraction(0), ty: Fraction = Fraction(0)) -> "Drawing":
        """Image under (x, y) -> (a x + b y + tx, c x + d y + ty)."""

        def f(p: Point) -> Point:
            return (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)

        return Drawing(
            self.graph,
            {v: f(p) for v, p in self.positions.items()},
            {e: tuple(f(p) for p in pts) for e, pts in self.routes.items()},
        )


@dataclass
class CrossingReport:
    valid: bool
    violations: list[str]
    crossings: list[tuple[Edge, Edge, Point]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.crossings)


def orient(p: Point, q: Point, r: Point) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    """r lies on the closed segment pq (given collinear)."""
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def _line_intersection(p1: Point, q1: Point, p2: Point, q2: Point) -> Point:
    d = (q1[0] - p1[0]) * (q2[1] - p2[1]) - (q1[1] - p1[1]) * (q2[0] - p2[0])
    t = ((p2[0] - p1[0]) * (q2[1] - p2[1]) - (p2[1] - p1[1]) * (q2[0] - p2[0])) / d
    return (p1[0] + t * (q1[0] - p1[0]), p1[1] + t * (q1[1] - p1[1]))


def segment_contact(p1: Point, q1: Point, p2: Point, q2: Point):
    """Classify how two closed segments meet.

    Returns None, ("cross", pt) for a transversal crossing interior to both,
    ("touch", pt) for a single common point that is an endpoint of either,
    or ("overlap", None) for a collinear overlap of positive length.
    """
    o1, o2 = orient(p1, q1, p2), orient(p1, q1, q2)
    o3, o4 = orient(p2, q2, p1), orient(p2, q2, q1)
    if o1 == 0 and o2 == 0:
        # collinear: project onto the dominant axis
        ax = 0 if p1[0] != q1[0] else 1
        a0, a1 = sorted((p1[ax], q1[ax]))
        b0, b1 = sorted((p2[ax], q2[ax]))
        lo, hi = max(a0, b0), min(a1, b1)
        if lo > hi:
            return None
        if lo < hi:
            return ("overlap", None)
        for cand in (p1, q1):
            if cand[ax] == lo:
                return ("touch", cand)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return ("cross", _line_intersection(p1, q1, p2, q2))
    if o1 == 0 and _on_segment(p1, q1, p2):
        return ("touch", p2)
    if o2 == 0 and _on_segment(p1, q1, q2):
        return ("touch", q2)
    if o3 == 0 and _on_segment(p2, q2, p1):
        return ("touch", p1)
    if o4 == 0 and _on_segment(p2, q2, q1):
        return ("touch", q1)
    return None


def _segments(d: Drawing):
    segs = []
    for e in d.graph.edges:
        pts = d.routes[e]
        last = len(pts) - 2
        for i in range(len(pts) - 1):
            p, q = pts[i], pts[i + 1]
            box = (min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))
            segs.append((e, i, i == last, p, q, box))
    return segs


def validate(d: Drawing) -> CrossingReport:
    """Check the good-drawing conditions and collect every crossing.

    Edges must be simple, adjacent edges may meet only at their common
    endpoint, independent edges may meet only in transversal crossings interior
    to both and at most once per pair, and no point may lie on three edges.
    Any touching, overlap, passage through a vertex or contact at a bend is a
    violation rather than a crossing.
    """
    g = d.graph
    violations: list[str] = []
    pos_owner: dict[Point, str] = {}
    for v in g.vertices:
        p = d.positions[v]
        if p in pos_owner:
            violations.append(f"vertices {pos_owner[p]} and {v} share position {_fmt(p)}")
        pos_owner[p] = v

    segs = _segments(d)
    for e, i, _, p, q, _ in segs:
        if p == q:
            violations.append(f"edge {_fmt_edge(e)} has a zero-length segment {i}")

    # vertex positions may only sit on their own edges' extreme points
    for v in g.vertices:
        r = d.positions[v]
        for e, i, is_last, p, q, box in segs:
            if not (box[0] <= r[0] <= box[1] and box[2] <= r[1] <= box[3]):
                continue
            if orient(p, q, r) != 0:
                continue
            allowed = (v == e[0] and i == 0 and r == p) or (v == e[1] and is_last and r == q)
            if not allowed:
                violations.append(f"edge {_fmt_edge(e)} passes through vertex {v}")

    crossings: list[tuple[Edge, Edge, Point]] = []
    for s, t in combinations(segs, 2):
        e, i, s_last, p1, q1, b1 = s
        f, j, t_last, p2, q2, b2 = t
        if b1[1] < b2[0] or b2[1] < b1[0] or b1[3] < b2[2] or b2[3] < b1[2]:
            continue
        contact = segment_contact(p1, q1, p2, q2)
        if contact is None:
            continue
        kind, pt = contact
        if e == f:
            if kind == "touch" and j == i + 1 and pt == q1:
                # consecutive segments share their joint; must not fold back
                if orient(p1, q1, q2) == 0 and not _on_segment(p1, q2, q1):
                    violations.append(f"edge {_fmt_edge(e)} folds back at bend {i + 1}")
                continue
            violations.append(f"edge {_fmt_edge(e)} is not simple (segments {i}, {j})")
            continue
        if kind == "overlap":
            violations.append(f"edges {_fmt_edge(e)} and {_fmt_edge(f)} overlap")
            continue
        if kind == "touch":
            shared = set(e) & set(f)
            if any(pt == d.positions[w] for w in shared):
                w = next(w for w in shared if pt == d.positions[w])
                at_end_s = (w == e[0] and i == 0 and pt == p1) or (w == e[1] and s_last and pt == q1)
                at_end_t = (w == f[0] and j == 0 and pt == p2) or (w == f[1] and t_last and pt == q2)
                if at_end_s and at_end_t:
                    continue
            if pt in pos_owner:
                continue  # reported by the vertex check
            violations.append(f"edges {_fmt_edge(e)} and {_fmt_edge(f)} touch at {_fmt(pt)}")
            continue
        if adjacent(e, f):
            violations.append(f"adjacent edges {_fmt_edge(e)} and {_fmt_edge(f)} cross at {_fmt(pt)}")
            continue
        a, b = (e, f) if g.edge_key(e) < g.edge_key(f) else (f, e)
        crossings.append((a, b, pt))

    per_pair = Counter((a, b) for a, b, _ in crossings)
    for (a, b), c in per_pair.items():
        if c > 1:
            violations.append(f"edges {_fmt_edge(a)} and {_fmt_edge(b)} cross {c} times")
    per_point = Counter(pt for _, _, pt in crossings)
    for pt, c in per_point.items():
        if c > 1:
            violations.append(f"{c} crossings share the point {_fmt(pt)}")

    crossings.sort(key=lambda t: (g.edge_key(t[0]), g.edge_key(t[1])))
    return CrossingReport(not violations, violations, crossings)


def count_crossings(d: Drawing, a: EdgeSet, b: Optional[EdgeSet] = None) -> int:
    """cr_phi(A) when ``b`` is None, otherwise cr_phi(A, B).

    cr_phi(A, B) counts crossing points between an edge of A and an edge of B,
    so cr_phi(A, A) = cr_phi(A).
    """
    rep = d.report
    if not rep.valid:
        raise InvalidDrawing(rep.violations)
    if a.graph is not d.graph or (b is not None and b.graph is not d.graph):
        raise ValueError("edge sets must belong to the drawing's graph")
    sa = a.ids
    sb = sa if b is None else b.ids
    if b is None:
        return sum(1 for e, f, _ in rep.crossings if e in sa and f in sa)
    return sum(1 for e, f, _ in rep.crossings if (e in sa and f in sb) or (f in sa and e in sb))


def total_crossings(d: Drawing) -> int:
    return count_crossings(d, d.graph.all_edges())


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: Any, where: str) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"{where}: rationals are strings like '3/4', got {s!r}")
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{where}: bad rational {s!r}") from None
    if format_rational(x) != s.strip():
        raise ValueError(f"{where}: rational {s!r} is not in reduced p/q form")
    return x


def _parse_point(obj: Any, where: str) -> Point:
    if not isinstance(obj, list) or len(obj) != 2:
        raise ValueError(f"{where}: a point is a two-element list")
    return (parse_rational(obj[0], f"{where}[0]"), parse_rational(obj[1], f"{where}[1]"))


def drawing_to_dict(d: Drawing) -> dict:
    g = d.graph
    return {
        "format": DRAWING_FORMAT,
        "parts": [list(p) for p in g.parts],
        "positions": {v: [format_rational(c) for c in d.positions[v]] for v in g.vertices},
        "edges": [
            {"u": e[0], "v": e[1], "bends": [[format_rational(c) for c in p] for p in d.routes[e][1:-1]]}
            for e in g.edges
        ],
    }


def drawing_from_dict(obj: Any) -> Drawing:
    if not isinstance(obj, dict):
        raise ValueError("drawing JSON must be an object")
    unknown = set(obj) - {"format", "parts", "positions", "edges"}
    if unknown:
        raise ValueError(f"unknown fields: {sorted(unknown)}")
    if obj.get("format") != DRAWING_FORMAT:
        raise ValueError(f"format must be {DRAWING_FORMAT!r}, got {obj.get('format')!r}")
    parts = obj.get("parts")
    if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
        raise ValueError("parts: expected a list of lists of vertex ids")
    for i, p in enumerate(parts):
        if not all(isinstance(v, str) for v in p):
            raise ValueError(f"parts[{i}]: vertex ids must be strings")
    raw_edges = obj.get("edges")
    if not isinstance(raw_edges, list):
        raise ValueError("edges: expected a list")
    edges, bends = [], {}
    for i, item in enumerate(raw_edges):
        if not isinstance(item, dict):
            raise ValueError(f"edges[{i}]: expected an object")
        extra = set(item) - {"u", "v", "bends"}
        if extra:
            raise ValueError(f"edges[{i}]: unknown fields {sorted(extra)}")
        u, v = item.get("u"), item.get("v")
        if not isinstance(u, str) or not isinstance(v, str):
            raise ValueError(f"edges[{i}]: u and v must be vertex ids")
        pts = item.get("bends", [])
        if not isinstance(pts, list):
            raise ValueError(f"edges[{i}].bends: expected a list")
        edges.append((u, v))
        bends[(u, v)] = [_parse_point(p, f"edges[{i}].bends[{k}]") for k, p in enumerate(pts)]
    names = _infer_part_names(parts)
    try:
        g = PartitionedGraph(tuple(tuple(p) for p in parts), tuple(edges), names)
    except ValueError as exc:
        raise ValueError(f"parts/edges: {exc}") from None
    if len(g.edges) != len(edges):
        raise ValueError("edges: duplicate edge")
    raw_pos = obj.get("positions")
    if not isinstance(raw_pos, dict):
        raise ValueError("positions: expected an object")
    positions = {}
    for v, p in raw_pos.items():
        if v not in g.part_index:
            raise ValueError(f"positions: unknown vertex {v!r}")
        positions[v] = _parse_point(p, f"positions[{v!r}]")
    missing = [v for v in g.vertices if v not in positions]
    if missing:
        raise ValueError(f"positions: unpositioned vertices {missing}")
    oriented = {}
    for (u, v), pts in bends.items():
        e = g.edge(u, v)
        oriented[e] = pts if e == (u, v) else list(reversed(pts))
    return Drawing.from_bends(g, positions, oriented)


def _infer_part_names(parts: list[list[str]]) -> Optional[tuple[str, ...]]:
    """x1, x2 -> 'X' when every part uses one letter prefix; otherwise None."""
    names = []
    for p in parts:
        prefixes = {v.rstrip("0123456789") for v in p}
        if len(prefixes) != 1:
            return None
        (pre,) = prefixes
        if not pre or not all(v[len(pre):].isdigit() for v in p):
            return None
        names.append(pre.upper())
    return tuple(names) if len(set(names)) == len(names) else None


def save_drawing(d: Drawing, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(drawing_to_dict(d), fh, indent=1)
        fh.write("\n")


def load_drawing(path: str) -> Drawing:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return drawing_from_dict(obj)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def to_svg(d: Drawing, mark_crossings: bool = True, size: int = 640, labels: bool = True) -> bytes:
    """Render the drawing; crossings become small circles of class ``crossing``."""
    g = d.graph
    pts: list[Point] = list(d.positions.values()) + [p for r in d.routes.values() for p in r]
    xs = [p[0] for p in pts] or [Fraction(0)]
    ys = [p[1] for p in pts] or [Fraction(0)]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Fraction(1))
    pad = 30

    def xy(p: Point) -> tuple[float, float]:
        sx = pad + float((p[0] - x0) / span) * (size - 2 * pad)
        sy = pad + float((y1 - p[1]) / span) * (size - 2 * pad)
        return round(sx, 3), round(sy, 3)

    height = pad * 2 + float((y1 - y0) / span) * (size - 2 * pad)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{round(height, 3)}" '
        f'viewBox="0 0 {size} {round(height, 3)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for e in g.edges:
        path = " ".join(f"{a},{b}" for a, b in map(xy, d.routes[e]))
        out.append(f'<polyline class="edge" points="{path}" fill="none" stroke="#555" stroke-width="1"/>')
    if mark_crossings:
        rep = d.report
        for _, _, p in rep.crossings:
            cx, cy = xy(p)
            out.append(f'<circle class="crossing" cx="{cx}" cy="{cy}" r="3" fill="none" stroke="red"/>')
    for pi, part in enumerate(g.parts):
        color = _PALETTE[pi % len(_PALETTE)]
        for v in part:
            cx, cy = xy(d.positions[v])
            out.append(f'<circle class="vertex" cx="{cx}" cy="{cy}" r="5" fill="{color}"/>')
            if labels:
                out.append(f'<text x="{cx + 6}" y="{cy - 6}" font-size="11">{v}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()


def _fmt(p: Point) -> str:
    return f"({format_rational(p[0])}, {format_rational(p[1])})"


def _fmt_edge(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"
