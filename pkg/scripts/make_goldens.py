#!/usr/bin/env python3
"""Regenerate the golden certificates under tests/data/.

    python scripts/make_goldens.py [--check]

With --check nothing is written; the script exits 1 if any regenerated file
differs from the committed bytes.
"""

import argparse
import sys
from pathlib import Path

from setramsey.certificate import Certificate
from setramsey.construction import resample_until_valid
from setramsey.oracle import exact_ramsey
from setramsey.params import desk_params

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# (file name, construction, params kwargs, base seed, max attempts)
CONSTRUCTED = [
    ("simple_r80_s64_k13_n40.cert", "simple", dict(r=80, s=64, k=13, n=40), 2024, 50),
    ("main_r16_s4_k8_n60.cert", "main", dict(r=16, s=4, k=8, n=60, m=20, p="1/2"), 1000, 50),
]


def goldens() -> dict[str, bytes]:
    out = {}
    res = exact_ramsey(2, 1, 3, n_cap=7)
    out["oracle_r2_s1_k3.cert"] = Certificate(r=2, s=1, k=3, colouring=res.witness_colouring).to_bytes()
    out["oracle_r2_s1_k3.log"] = res.proof_log().split("elapsed_s=")[0].encode()
    for name, construction, spec, seed, attempts in CONSTRUCTED:
        kw = dict(spec)
        r, s, k, n = kw.pop("r"), kw.pop("s"), kw.pop("k"), kw.pop("n")
        params = desk_params(r, s, k, n=n, **kw)
        result = resample_until_valid(params, construction, attempts, seed)
        if not result.success:
            raise SystemExit(f"{name}: no success in {attempts} attempts from seed {seed}")
        out[name] = result.certificate.to_bytes()
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name, data in goldens().items():
        path = DATA / name
        if args.check:
            same = path.exists() and path.read_bytes() == data
            print(f"{'ok  ' if same else 'DIFF'} {name}")
            bad += not same
        else:
            path.write_bytes(data)
            print(f"wrote {path} ({len(data)} bytes)")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
