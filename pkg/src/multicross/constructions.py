"""Upper-bound drawings: Zarankiewicz drawings of K_{m,n} and the spine drawings of each family.

Every drawing puts the small-part vertices (the spine) on the y-axis and the
Z vertices on the x-axis, ceil(n/2) on the right and floor(n/2) on the left.
Z edges are straight.  A spine edge is drawn in one of three ways:

``axis``    consecutive spine vertices, straight along the axis (no crossings);
``near``    beside the axis on one side, crossing that side's Z edges to every
            spine vertex it passes;
``around``  a wide arc on one side enclosing that side's Z vertices, crossing
            their edges to every spine vertex outside its interval.

Near edges and arcs are nested so that spine edges never cross each other,
hence the total is Z(k, n) plus the sum of the per-edge costs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .formulas import CONSTRUCTED, get_family, zarankiewicz
from .geometry import Drawing, InvalidDrawing, Point
from .graph import Edge, PartitionedGraph, complete_multipartite

LEFT, RIGHT = "left", "right"
AXIS, NEAR, AROUND = "axis", "near", "around"

MAX_RETRIES = 12


@dataclass(frozen=True)
class Route:
    u: str
    v: str
    kind: str
    side: Optional[str] = None
    passes: tuple[str, ...] = ()  # spine vertices whose same-side Z edges this route crosses


@dataclass(frozen=True)
class FamilyLayout:
    family: str
    n: int
    spine: tuple[str, ...]  # top to bottom
    above: int  # number of spine vertices above the Z line
    routes: tuple[Route, ...]
    z_right: tuple[str, ...]
    z_left: tuple[str, ...]

    def side_count(self, side: str) -> int:
        return len(self.z_right) if side == RIGHT else len(self.z_left)

    def predicted_offset(self) -> int:
        return sum(self.side_count(r.side) * len(r.passes) for r in self.routes if r.kind != AXIS)


# spine order (top to bottom), number above the Z line, and non-axis routes.
# The minority side is LEFT (floor(n/2) vertices).
_PLANS: dict[str, tuple[tuple[str, ...], int, tuple[tuple[str, str, str, Optional[str]], ...]]] = {
    "K1111n": (
        ("s1", "x1", "y1", "t1"), 2,
        (("s1", "y1", NEAR, LEFT), ("x1", "t1", NEAR, RIGHT), ("s1", "t1", AROUND, RIGHT)),
    ),
    "K122n": (
        ("u2", "y1", "u1", "y2", "x1"), 2,
        (("u2", "y2", AROUND, RIGHT), ("y1", "x1", AROUND, LEFT),
         ("u1", "x1", NEAR, LEFT), ("u2", "x1", AROUND, RIGHT)),
    ),
    "K1112n": (
        ("y1", "t1", "x1", "t2", "s1"), 2,
        (("y1", "x1", NEAR, RIGHT), ("t1", "s1", AROUND, LEFT), ("x1", "s1", NEAR, LEFT),
         ("y1", "s1", AROUND, RIGHT), ("y1", "t2", AROUND, RIGHT)),
    ),
    "K14n": (
        ("y1", "x1", "y2", "y3", "y4"), 2,
        (("x1", "y3", NEAR, LEFT), ("x1", "y4", AROUND, LEFT)),
    ),
    "K13n": (
        ("y1", "x1", "y2", "y3"), 2,
        (("x1", "y3", NEAR, LEFT),),
    ),
}


def layout_for(family: str, n: int) -> FamilyLayout:
    """The spine order and routing plan used by :func:`construct_family`."""
    if family not in _PLANS:
        raise ValueError(f"no construction for family {family!r}; choose from {', '.join(CONSTRUCTED)}")
    if n < 1:
        raise ValueError("n must be >= 1")
    spine, above, plan = _PLANS[family]
    g = get_family(family).graph(n)
    index = {v: i for i, v in enumerate(spine)}
    routes = []
    covered = set()
    for u, v, kind, side in plan:
        a, b = sorted((index[u], index[v]))
        if kind == NEAR:
            passes = spine[a + 1:b]
        else:
            passes = spine[:a] + spine[b + 1:]
        routes.append(Route(u, v, kind, side, tuple(passes)))
        covered.add(frozenset((u, v)))
    zs = g.parts[-1]
    spine_edges = {frozenset(e) for e in g.edges if not (set(e) & set(zs))}
    for i in range(len(spine) - 1):
        pair = frozenset(spine[i:i + 2])
        if pair in spine_edges:
            routes.append(Route(spine[i], spine[i + 1], AXIS))
            covered.add(pair)
    n_right = (n + 1) // 2
    layout = FamilyLayout(family, n, spine, above, tuple(routes), zs[:n_right], zs[n_right:])
    if spine_edges != covered:
        raise AssertionError(f"layout for {family} does not cover the spine edges exactly")
    return layout


def _nesting_levels(routes: list[tuple[int, int, Route]]) -> dict[Route, int]:
    """Level 1 for innermost intervals; a route sits outside everything it contains."""
    levels: dict[Route, int] = {}
    for a, b, r in sorted(routes, key=lambda t: t[1] - t[0]):
        inner = [levels[r2] for a2, b2, r2 in routes if r2 in levels and a <= a2 and b2 <= b and r2 is not r]
        levels[r] = 1 + max(inner, default=0)
    return levels


def _spine_heights(spine_len: int, above: int) -> list[Fraction]:
    """Distinct y-coordinates, top to bottom; slightly irregular to avoid triple points."""
    ys = []
    for j in range(spine_len):
        if j < above:
            k = above - j
            ys.append(Fraction(k) + Fraction(k * k, 7 * (k + 3)))
        else:
            k = j - above + 1
            ys.append(-(Fraction(k) + Fraction(k * k, 5 * (k + 4))))
    return ys


def _z_offsets(count: int, stretch: int) -> list[Fraction]:
    return [Fraction(i) + Fraction(i * i, 11 * (i + stretch)) for i in range(1, count + 1)]


def _build(g: PartitionedGraph, spine, above, routes, z_right, z_left, eps: Fraction, attempt: int) -> Drawing:
    ys = _spine_heights(len(spine), above)
    pos: dict[str, Point] = {v: (Fraction(0), y) for v, y in zip(spine, ys)}
    xr = _z_offsets(len(z_right), 3 + attempt)
    xl = _z_offsets(len(z_left), 5 + 2 * attempt)
    for v, x in zip(z_right, xr):
        pos[v] = (x, Fraction(0))
    for v, x in zip(z_left, xl):
        pos[v] = (-x, Fraction(0))
    x_max = max([Fraction(1)] + xr + xl)
    index = {v: i for i, v in enumerate(spine)}
    delta = Fraction(1, 4)
    bends: dict[Edge, list[Point]] = {}
    for side in (LEFT, RIGHT):
        sign = 1 if side == RIGHT else -1
        for kind in (NEAR, AROUND):
            group = []
            for r in routes:
                if r.kind == kind and r.side == side:
                    a, b = sorted((index[r.u], index[r.v]))
                    group.append((a, b, r))
            levels = _nesting_levels(group)
            for a, b, r in group:
                lvl = levels[r]
                top, bot = spine[a], spine[b]
                ya, yb = ys[a], ys[b]
                if kind == NEAR:
                    x = sign * eps * lvl
                    path = [(x, ya - delta), (x, yb + delta)]
                else:
                    x = sign * (x_max + lvl)
                    eta = Fraction(lvl, 4 * (len(group) + 1))
                    path = [(x, ya + eta), (x, yb - eta)]
                e = g.edge(top, bot)
                bends[e] = path if e == (top, bot) else path[::-1]
    return Drawing.from_bends(g, pos, bends)


def _construct(g: PartitionedGraph, spine, above, routes, z_right, z_left) -> Drawing:
    n = len(z_right) + len(z_left)
    eps = Fraction(1, 8 * (n + 5))
    last: Optional[Drawing] = None
    for attempt in range(MAX_RETRIES):
        d = _build(g, spine, above, routes, z_right, z_left, eps, attempt // 3)
        if d.report.valid:
            return d
        last = d
        eps /= 2
    assert last is not None
    raise InvalidDrawing(last.report.violations)


def zarankiewicz_drawing(m: int, n: int) -> Drawing:
    """Straight-line drawing of K_{m,n} with Z(m, n) crossings."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    g = complete_multipartite([m, n], ["A", "B"])
    spine = g.parts[0]
    bs = g.parts[1]
    n_right = (n + 1) // 2
    return _construct(g, spine, (m + 1) // 2, (), bs[:n_right], bs[n_right:])


def construct_family(family: str, n: int) -> Drawing:
    """Good drawing of the family member at n with exactly the closed-form crossing count."""
    lay = layout_for(family, n)
    g = get_family(family).graph(n)
    return _construct(g, lay.spine, lay.above, lay.routes, lay.z_right, lay.z_left)


def predicted_total(family: str, n: int) -> int:
    lay = layout_for(family, n)
    return zarankiewicz(len(lay.spine), n) + lay.predicted_offset()
