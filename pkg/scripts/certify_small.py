"""Run the exact solver on the smallest members of each family and compare with the closed forms.

    python scripts/certify_small.py --max-n 2 --budget 300 --out certify.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from multicross.formulas import FAMILIES, family_formula
from multicross.solver import exact_crossing_number


@dataclass
class Config:
    families: tuple[str, ...] = ("K1111n", "K122n", "K1112n", "K14n", "K13n", "K23n", "K113n", "K24n")
    max_n: int = 2
    budget: float = 300.0
    threads: int = 1
    out: str = "-"


def run(cfg: Config) -> list[dict]:
    rows = []
    for code in cfg.families:
        fam = FAMILIES[code]
        for n in range(1, cfg.max_n + 1):
            g = fam.graph(n)
            entry = family_formula(code, n)
            r = exact_crossing_number(g, budget=cfg.budget, threads=cfg.threads)
            rows.append({
                "family": code, "n": n, "edges": len(g.edges), "formula": entry.value, "status": entry.status,
                "solver": r.k if r.exact else "", "lower": r.k if r.exact else r.lower,
                "upper": r.k if r.exact else r.upper, "seconds": f"{r.elapsed:.2f}",
            })
            print(f"{code} n={n}: formula {entry.value}, solver "
                  f"{r.k if r.exact else (r.lower, r.upper)} in {r.elapsed:.1f}s", file=sys.stderr)
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--family", action="append")
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--budget", type=float, default=Config.budget)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="-")
    a = p.parse_args()
    cfg = Config(tuple(a.family) if a.family else Config.families, a.max_n, a.budget, a.threads, a.out)
    rows = run(cfg)
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    w = csv.DictWriter(fh, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
