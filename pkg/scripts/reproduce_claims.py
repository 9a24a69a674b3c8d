"""Run every structural check on Q_n and R_n over a range of n and print a table.

    python scripts/reproduce_claims.py --n-max 7 --json results.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from reflexsimplex import claims

# largest n each check is run at by default; delta-eulerian beyond 6 uses reciprocity
DEFAULT_LIMITS = {"volume": 12, "selfdual": 8, "delta-eulerian": 7, "rntilde": 10, "pyramid": 5}


@dataclass
class Config:
    n_min: int = 2
    n_max: int | None = None
    theorems: tuple[str, ...] = tuple(claims.THEOREMS)
    reciprocity_from: int = 7
    json_path: str | None = None


def run(cfg: Config) -> list[dict]:
    rows = []
    for name in cfg.theorems:
        top = DEFAULT_LIMITS[name] if cfg.n_max is None else cfg.n_max
        for n in range(cfg.n_min, top + 1):
            kwargs = {}
            if name == "delta-eulerian" and n >= cfg.reciprocity_from:
                kwargs["use_reciprocity"] = True
            t0 = time.perf_counter()
            res = claims.THEOREMS[name](n, **kwargs)
            elapsed = time.perf_counter() - t0
            print(f"{res.line()}  [{elapsed:.2f}s]")
            rows.append({**res.to_json(), "seconds": round(elapsed, 4)})
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=None, help="override the per-check default limits")
    p.add_argument("--theorem", action="append", choices=sorted(claims.THEOREMS))
    p.add_argument("--reciprocity-from", type=int, default=7)
    p.add_argument("--json", dest="json_path")
    a = p.parse_args()
    cfg = Config(a.n_min, a.n_max, tuple(a.theorem or claims.THEOREMS), a.reciprocity_from, a.json_path)
    rows = run(cfg)
    failed = [r for r in rows if not r["pass"]]
    print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump({"config": asdict(cfg), "results": rows}, fh, indent=1)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
