"""Success rate of the random-height search for regular flag unimodular triangulations.

For each polytope and seed, record the first trial that produced a certificate
(or none within the trial budget).

    python scripts/rfu_sweep.py --family rn --n 2 3 --seeds 10
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from reflexsimplex import families
from reflexsimplex.polytope import lattice_points
from reflexsimplex.triangulation import search_rfu


@dataclass
class Config:
    family: str = "rn"
    ns: tuple[int, ...] = (2, 3)
    seeds: int = 10
    trials: int = 1000


def sweep(cfg: Config) -> None:
    for n in cfg.ns:
        P = families.FAMILIES[cfg.family](n)
        npts = len(lattice_points(P))
        hits = []
        t0 = time.perf_counter()
        for seed in range(cfg.seeds):
            cert = search_rfu(P, cfg.trials, seed)
            hits.append(None if cert is None else cert.trial)
        elapsed = time.perf_counter() - t0
        found = [t for t in hits if t is not None]
        print(f"{cfg.family} n={n} ({npts} lattice points): {len(found)}/{cfg.seeds} seeds succeeded, "
              f"first trials {hits}  [{elapsed:.1f}s]")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--family", choices=sorted(families.FAMILIES), default="rn")
    p.add_argument("--n", type=int, nargs="+", default=[2, 3])
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--trials", type=int, default=1000)
    a = p.parse_args()
    sweep(Config(a.family, tuple(a.n), a.seeds, a.trials))


if __name__ == "__main__":
    main()
