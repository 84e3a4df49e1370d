#!/usr/bin/env python3
"""Desk-scale sweep of the main construction over (m, p).

For each grid cell, resample seeds until a colouring verifies and record how
attempts failed.  Output is one JSON object per cell.

    python scripts/sweep_main.py --r 12 --s 8 --k 6 --n 60 --m 10,20,40 --p 1/2,7/10 --seed 0
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from setramsey.construction import resample_until_valid
from setramsey.params import desk_params


@dataclass
class SweepConfig:
    r: int = 12
    s: int = 8
    k: int = 6
    n: int = 60
    m_values: list[int] = field(default_factory=lambda: [10, 20, 40])
    p_values: list[Fraction] = field(default_factory=lambda: [Fraction(1, 2), Fraction(7, 10)])
    base_seed: int = 0
    attempts: int = 100


def sweep(cfg: SweepConfig, sink=sys.stdout) -> list[dict]:
    rows = []
    for m in cfg.m_values:
        for p in cfg.p_values:
            params = desk_params(cfg.r, cfg.s, cfg.k, n=cfg.n, m=m, p=p)
            t0 = time.perf_counter()
            out = resample_until_valid(params, "main", cfg.attempts, cfg.base_seed)
            row = {"r": cfg.r, "s": cfg.s, "k": cfg.k, "n": cfg.n, "m": m, "p": str(p),
                   "base_seed": cfg.base_seed, **out.as_dict(),
                   "elapsed_s": round(time.perf_counter() - t0, 3)}
            sink.write(json.dumps(row) + "\n")
            sink.flush()
            rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = SweepConfig()
    ap.add_argument("--r", type=int, default=d.r)
    ap.add_argument("--s", type=int, default=d.s)
    ap.add_argument("--k", type=int, default=d.k)
    ap.add_argument("--n", type=int, default=d.n)
    ap.add_argument("--m", default=",".join(map(str, d.m_values)))
    ap.add_argument("--p", default=",".join(map(str, d.p_values)))
    ap.add_argument("--seed", type=int, default=d.base_seed)
    ap.add_argument("--attempts", type=int, default=d.attempts)
    a = ap.parse_args()
    cfg = SweepConfig(a.r, a.s, a.k, a.n, [int(x) for x in a.m.split(",")],
                      [Fraction(x) for x in a.p.split(",")], a.seed, a.attempts)
    print("# " + json.dumps({k: str(v) for k, v in asdict(cfg).items()}), file=sys.stderr)
    sweep(cfg)


if __name__ == "__main__":
    main()
