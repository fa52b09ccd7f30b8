"""Closed-form crossing numbers for complete multipartite families, and lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from .graph import PartitionedGraph, complete_multipartite

PROVED_IN_PAPER = "proved-in-paper"
PROVED_ELSEWHERE = "proved-elsewhere"
CONJECTURED = "conjectured"


def zarankiewicz(m: int, n: int) -> int:
    """Z(m, n) = floor(m/2) floor((m-1)/2) floor(n/2) floor((n-1)/2)."""
    if m < 1 or n < 1:
        raise ValueError("zarankiewicz needs m, n >= 1")
    return (m // 2) * ((m - 1) // 2) * (n // 2) * ((n - 1) // 2)


@dataclass(frozen=True)
class FormulaEntry:
    family: str
    n: int
    value: int
    status: str

    @property
    def conjectural(self) -> bool:
        return self.status == CONJECTURED


@dataclass(frozen=True)
class Family:
    code: str
    sizes: tuple[int, ...]  # the fixed parts; the Z part of size n comes last
    names: str
    status: str
    closed_form: str
    value: Callable[[int], int]

    def part_sizes(self, n: int) -> list[int]:
        return [*self.sizes, n]

    def graph(self, n: int) -> PartitionedGraph:
        if n < 1:
            raise ValueError("n must be >= 1")
        return complete_multipartite(self.part_sizes(n), [*self.names, "Z"])


def _bipartite(m: int) -> Family:
    return Family(
        f"K{m}n", (m,), "X", PROVED_ELSEWHERE, f"Z({m},n)", lambda n, m=m: zarankiewicz(m, n)
    )


FAMILIES: dict[str, Family] = {
    f.code: f
    for f in [
        Family("K1111n", (1, 1, 1, 1), "XYST", PROVED_IN_PAPER, "Z(4,n)+n",
               lambda n: zarankiewicz(4, n) + n),
        Family("K122n", (1, 2, 2), "XYU", PROVED_IN_PAPER, "Z(5,n)+floor(3n/2)",
               lambda n: zarankiewicz(5, n) + 3 * n // 2),
        Family("K1112n", (1, 1, 1, 2), "XYST", PROVED_IN_PAPER, "Z(5,n)+2n",
               lambda n: zarankiewicz(5, n) + 2 * n),
        Family("K14n", (1, 4), "XY", PROVED_IN_PAPER, "Z(5,n)+2floor(n/2)",
               lambda n: zarankiewicz(5, n) + 2 * (n // 2)),
        Family("K13n", (1, 3), "XY", PROVED_IN_PAPER, "Z(4,n)+floor(n/2)",
               lambda n: zarankiewicz(4, n) + n // 2),
        Family("K23n", (2, 3), "XY", PROVED_ELSEWHERE, "Z(5,n)+n",
               lambda n: zarankiewicz(5, n) + n),
        Family("K113n", (1, 1, 3), "XYU", CONJECTURED, "Z(5,n)+floor(3n/2)",
               lambda n: zarankiewicz(5, n) + 3 * n // 2),
        Family("K24n", (2, 4), "XY", CONJECTURED, "Z(6,n)+2n",
               lambda n: zarankiewicz(6, n) + 2 * n),
        *(_bipartite(m) for m in range(1, 7)),
    ]
}

# families with a construction in ``constructions``
CONSTRUCTED = ("K1111n", "K122n", "K1112n", "K14n", "K13n")


def get_family(code: str) -> Family:
    try:
        return FAMILIES[code]
    except KeyError:
        raise ValueError(f"unknown family {code!r}; choose from {', '.join(FAMILIES)}") from None


def family_formula(code: str, n: int) -> FormulaEntry:
    fam = get_family(code)
    if n < 1:
        raise ValueError("n must be >= 1")
    return FormulaEntry(code, n, fam.value(n), fam.status)


def known_bipartite_cr(m: int, n: int) -> Optional[FormulaEntry]:
    """cr(K_{m,n}) when Kleitman's range min(m, n) <= 6 covers it, else None."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    small, big = min(m, n), max(m, n)
    if small > 6:
        return None
    return FormulaEntry(f"K{small}n", big, zarankiewicz(m, n), PROVED_ELSEWHERE)


def match_family(g: PartitionedGraph) -> Optional[FormulaEntry]:
    """The catalogue entry for a complete multipartite graph, if it is one.

    Part order is ignored; the Z part is taken to be any part whose removal
    leaves a catalogued prefix.
    """
    if not g.is_complete():
        return None
    sizes = sorted(len(p) for p in g.parts)
    for fam in FAMILIES.values():
        for i, n in enumerate(sizes):
            rest = sizes[:i] + sizes[i + 1:]
            if rest == sorted(fam.sizes):
                return FormulaEntry(fam.code, n, fam.value(n), fam.status)
    return None


def euler_lower_bound(g: PartitionedGraph) -> int:
    """max(0, |E| - 3|V| + 6); for two-part graphs also |E| - 2|V| + 4."""
    v, e = len(g.vertices), len(g.edges)
    if v < 3:
        return 0
    bound = e - 3 * v + 6
    if len(g.parts) == 2:
        bound = max(bound, e - 2 * v + 4)
    return max(0, bound)


def bipartite_merge_bounds(g: PartitionedGraph) -> list[tuple[int, int, int]]:
    """(m, n, bound) for every split of the parts into two merged blocks.

    Each split exposes a K_{m,n} subgraph, whose crossing number is known
    whenever min(m, n) <= 6; the bipartite Euler bound applies regardless.
    """
    sizes = [len(p) for p in g.parts]
    k = len(sizes)
    out = []
    seen = set()
    for r in range(1, k):
        for left in combinations(range(k), r):
            m = sum(sizes[i] for i in left)
            n = sum(sizes) - m
            key = tuple(sorted((left, tuple(i for i in range(k) if i not in left))))
            if key in seen:
                continue
            seen.add(key)
            # the bipartite Euler bound needs at least 3 vertices
            bound = max(0, m * n - 2 * (m + n) + 4) if m + n >= 3 else 0
            if min(m, n) <= 6:
                bound = max(bound, zarankiewicz(m, n))
            out.append((m, n, bound))
    return out


def best_lower_bound(g: PartitionedGraph) -> int:
    """Largest of the Euler bound and all two-block bipartite bounds.

    The bipartite bounds need every cross-part edge, so they are only used on
    complete multipartite graphs.
    """
    bound = euler_lower_bound(g)
    if g.is_complete():
        for _, _, b in bipartite_merge_bounds(g):
            bound = max(bound, b)
    return bound
