#!/usr/bin/env python3
"""Write a bounds CSV over a log-spaced r grid and report where each lower bound leads.

    python scripts/bounds_table.py --out bounds.csv
"""

import argparse
import sys
from dataclasses import dataclass, field

from setramsey.bounds import EXPONENT_FIELDS, BoundConstants, emit_bounds_table, evaluate_bounds, s_rule_from_name

LOWER = [f for f in EXPONENT_FIELDS if f.startswith("lower")]


@dataclass
class TableConfig:
    r_values: list[int] = field(default_factory=lambda: [2**e for e in range(4, 13)])
    k_values: list[int] = field(default_factory=lambda: [10, 100, 1000, 10**4, 10**5])
    s_rule: str = "r-log2"
    constants: BoundConstants = field(default_factory=BoundConstants)


def leaders(cfg: TableConfig) -> dict[tuple[int, int], str]:
    rule = s_rule_from_name(cfg.s_rule)
    out = {}
    for r in cfg.r_values:
        for k in cfg.k_values:
            row = evaluate_bounds(r, rule(r), k, cfg.constants)
            out[(r, k)] = max(LOWER, key=lambda f: getattr(row, f))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s-rule", default="r-log2")
    ap.add_argument("--c-delta", default="1", help="number or 'chernoff'")
    ap.add_argument("--out")
    a = ap.parse_args()
    c_delta = a.c_delta if a.c_delta == "chernoff" else float(a.c_delta)
    cfg = TableConfig(s_rule=a.s_rule, constants=BoundConstants(c_delta=c_delta))
    rule = s_rule_from_name(cfg.s_rule)
    if a.out:
        with open(a.out, "w", newline="") as fh:
            emit_bounds_table(cfg.r_values, rule, cfg.k_values, cfg.constants, fh, with_bits=True)
    else:
        emit_bounds_table(cfg.r_values, rule, cfg.k_values, cfg.constants, sys.stdout, with_bits=True)
    print("\nlargest lower exponent per (r, k):", file=sys.stderr)
    for (r, k), name in leaders(cfg).items():
        print(f"  r={r:<5} k={k:<6} {name}", file=sys.stderr)


if __name__ == "__main__":
    main()
