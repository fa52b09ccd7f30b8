"""Write JSON and SVG files for the constructed drawings, one per family and n."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from multicross.constructions import construct_family
from multicross.formulas import CONSTRUCTED
from multicross.geometry import save_drawing, to_svg, total_crossings


@dataclass
class Config:
    out_dir: Path = Path("drawings")
    ns: tuple[int, ...] = (3, 4)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Config.out_dir)
    p.add_argument("--n", type=int, action="append")
    a = p.parse_args()
    cfg = Config(a.out_dir, tuple(a.n) if a.n else Config.ns)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for fam in CONSTRUCTED:
        for n in cfg.ns:
            d = construct_family(fam, n)
            stem = cfg.out_dir / f"{fam}-{n}"
            save_drawing(d, f"{stem}.json")
            (stem.with_suffix(".svg")).write_bytes(to_svg(d))
            print(f"{stem}: {total_crossings(d)} crossings")


if __name__ == "__main__":
    main()
