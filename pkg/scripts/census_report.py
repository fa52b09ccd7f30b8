"""Census counts of tiny complete multipartite graphs under each drawing equivalence."""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass, field

from multicross.census import EQUIVALENCES, enumerate_drawings, rich_faces
from multicross.graph import parse_graph_spec


@dataclass
class Config:
    graphs: list[str] = field(default_factory=lambda: ["1,1,1", "1,1,1,1", "2,3", "1,2,2", "1,1,1,1,1"])


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("graphs", nargs="*")
    cfg = Config(p.parse_args().graphs or Config().graphs)
    print("graph,equivalence,classes,by_crossings,classes_with_face_on_all_vertices")
    for spec in cfg.graphs:
        g = parse_graph_spec(spec)
        nv = len(g.vertices)
        for eq in EQUIVALENCES:
            classes = enumerate_drawings(g, equivalence=eq)
            hist = Counter(c.crossings for c in classes)
            full = sum(1 for c in classes if rich_faces(c, nv))
            by = " ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
            print(f"K{{{spec}}},{eq},{len(classes)},{by},{full}")


if __name__ == "__main__":
    main()
