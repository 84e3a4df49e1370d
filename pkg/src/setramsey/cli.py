"""Command-line front end.

Exit codes: 0 success / valid, 1 verification failed or certificate invalid,
2 usage error.  Randomized subcommands require an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from collections import Counter
from pathlib import Path

from . import bounds, diagnostics, rng
from .certificate import (Certificate, CertificateError, read_certificate,
                          write_certificate)
from .construction import build_main_colouring, resample_until_valid
from .oracle import ExceedsCap, GuardError, exact_ramsey
from .params import ParameterError, as_fraction, desk_params
from .verifier import verify


def int_list(text: str) -> list[int]:
    """'4,8,16' or '3:7' (inclusive) or '3:11:2', comma-joinable."""
    out: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if ":" in item:
            parts = [int(x) for x in item.split(":")]
            lo, hi = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            out.extend(range(lo, hi + 1, step))
        else:
            out.append(int(item))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def seed_arg(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _params_from(args, n=None, r=None, s=None, k=None):
    return desk_params(r or args.r, s or args.s, k or args.k, n=n or args.n, m=args.m,
                       p=args.p, delta=args.delta)


def cmd_construct(args) -> int:
    params = _params_from(args)
    out = resample_until_valid(params, args.construction, args.max_attempts, args.seed,
                               threads=args.threads)
    result = out.as_dict()
    result.update(construction=args.construction, r=params.r, s=params.s, k=params.k,
                  n=params.n, m=params.m if args.construction == "main" else None,
                  p=str(params.p) if args.construction == "main" else None,
                  base_seed=args.seed)
    if out.success and args.out:
        result["bytes"] = write_certificate(out.certificate, args.out)
        result["sha256"] = out.certificate.checksum()
        result["path"] = str(args.out)
    _emit(result)
    return 0 if out.success else 1


def cmd_verify(args) -> int:
    try:
        cert = read_certificate(args.file)
    except (CertificateError, OSError) as exc:
        _emit({"valid": False, "reason": "certificate_invalid", "error": str(exc)})
        return 1
    s = cert.s if args.s is None else args.s
    k = cert.k if args.k is None else args.k
    rep = verify(cert.colouring, s, k, exhaustive=args.exhaustive, threads=args.threads)
    d = rep.as_dict()
    d["construction"] = cert.construction
    d["sha256"] = cert.checksum()
    if not rep.valid:
        d["reason"] = "min_colours" if not rep.min_colour_ok else "monochromatic_clique"
    _emit(d)
    return 0 if rep.valid else 1


def cmd_oracle(args) -> int:
    try:
        res = exact_ramsey(args.r, args.s, args.k, args.n_cap, node_budget=args.node_budget)
    except ExceedsCap as exc:
        _emit({"value": None, "reason": "exceeds_cap", "error": str(exc)})
        return 1
    except GuardError as exc:
        _emit({"value": None, "reason": "guard", "error": str(exc)})
        return 1
    cert = Certificate(r=args.r, s=args.s, k=args.k, colouring=res.witness_colouring)
    d = {"r": args.r, "s": args.s, "k": args.k, "value": res.value,
         "witness_n": res.witness_colouring.n, "exhaustive": res.exhaustive_upper_proof,
         "nodes_per_level": {str(n): c for n, c in res.nodes_per_level.items()},
         "witness_sha256": cert.checksum()}
    if args.out:
        write_certificate(cert, args.out)
        d["path"] = str(args.out)
    if args.log:
        Path(args.log).write_text(res.proof_log())
    _emit(d)
    return 0


def cmd_bounds(args) -> int:
    consts = bounds.BoundConstants(c=args.c, c_prime=args.c_prime, delta=args.delta,
                                   c_delta=args.c_delta if args.c_delta == "chernoff"
                                   else float(args.c_delta))
    rule = bounds.s_rule_from_name(args.s_rule)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            count = bounds.emit_bounds_table(args.r, rule, args.k, consts, fh, args.bits)
        _emit({"rows": count, "path": str(args.out)})
    else:
        bounds.emit_bounds_table(args.r, rule, args.k, consts, sys.stdout, args.bits)
    return 0


def cmd_sweep(args) -> int:
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        for r in args.r:
            for s in args.s:
                for k in args.k:
                    for n in args.n:
                        try:
                            params = desk_params(r, s, k, n=n, m=args.m, p=args.p, delta=args.delta)
                        except ParameterError as exc:
                            sink.write(json.dumps({"r": r, "s": s, "k": k, "n": n,
                                                   "error": str(exc)}) + "\n")
                            continue
                        out = resample_until_valid(params, args.construction, args.attempts,
                                                   args.seed, threads=args.threads)
                        row = {"construction": args.construction, "r": r, "s": s, "k": k, "n": n,
                               "m": params.m if args.construction == "main" else None,
                               "p": str(params.p) if args.construction == "main" else None,
                               "base_seed": args.seed, **out.as_dict()}
                        sink.write(json.dumps(row, sort_keys=True) + "\n")
                        sink.flush()
    finally:
        if args.out:
            sink.close()
    return 0


def cmd_diagnose(args) -> int:
    params = _params_from(args)
    art = build_main_colouring(params, args.seed, threads=args.threads)
    t_int = params.t_int if args.edges is None else args.edges
    t_int = min(t_int, params.k * (params.k - 1) // 2)
    g = rng.stream(args.sample_seed, 1, rng.SAMPLING)
    xs, zs, ys = [], [], []
    claim_failures = 0
    ells = Counter()
    for _ in range(args.samples):
        F = diagnostics.sample_subgraph(params.n, params.k, t_int, g)
        diag = diagnostics.compute_cluster_diagnostics(F, art.partitions, params.delta, params.eps)
        st = diagnostics.compute_bad_pair_stats(F, art)
        xs.append(diag.X_F)
        ys.append(st.Y_size)
        zs.append(st.Z_value)
        ells[str(diag.bottleneck_ell)] += 1
        claim_failures += not diagnostics.claim_holds(F, diag, params.eps, params.r)
    max_bad = diagnostics.max_bad_edges_over_sampled_cliques(art, params.k, args.samples,
                                                             args.sample_seed)
    _emit({
        "r": params.r, "s": params.s, "k": params.k, "n": params.n, "m": params.m,
        "p": str(params.p), "seed": args.seed, "sample_seed": args.sample_seed,
        "samples": args.samples, "edges_per_F": t_int, "t": float(params.t),
        "bad_edge_count": int(art.bad.sum()),
        "X_F_mean": sum(xs) / len(xs), "X_F_max": max(xs),
        "X_F_threshold": float(params.eps * params.r * t_int / 2),
        "Y_mean": sum(ys) / len(ys), "Z_mean": sum(zs) / len(zs),
        "Z_over_Y": sum(zs) / max(1, sum(ys)), "one_minus_p": float(1 - params.p),
        "bottleneck_levels": dict(ells), "claim_failures": claim_failures,
        "max_bad_edges_in_sampled_k_sets": max_bad,
    })
    return 0


def _add_param_args(p, *, lists=False):
    conv = int_list if lists else int
    p.add_argument("--r", type=conv, required=True)
    p.add_argument("--s", type=conv, required=True)
    p.add_argument("--k", type=conv, required=True)
    p.add_argument("--n", type=conv, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--p", type=as_fraction, default=None, help="edge probability, e.g. 7/10")
    p.add_argument("--delta", type=as_fraction, default=bounds.DEFAULT_DELTA)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="setramsey", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a colouring and emit a certificate")
    _add_param_args(p)
    p.add_argument("--construction", choices=["main", "simple"], required=True)
    p.add_argument("--seed", type=seed_arg, required=True)
    p.add_argument("--max-attempts", type=int, default=1)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate file")
    p.add_argument("file", type=Path)
    p.add_argument("--s", type=int, default=None, help="override the header s")
    p.add_argument("--k", type=int, default=None, help="override the header k")
    p.add_argument("--exhaustive", action="store_true", help="also report per-colour clique numbers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact R_{r,s}(k) by exhaustive search")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-cap", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=20_000_000)
    p.add_argument("--out", type=Path)
    p.add_argument("--log", type=Path)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bounds", help="CSV table of bound exponents")
    p.add_argument("--r", type=int_list, required=True)
    p.add_argument("--k", type=int_list, required=True)
    p.add_argument("--s-rule", default="r-log2")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--c-prime", type=float, default=1.0)
    p.add_argument("--c-delta", default="1")
    p.add_argument("--delta", type=as_fraction, default=bounds.DEFAULT_DELTA)
    p.add_argument("--bits", action="store_true", help="append base-2 exponent columns")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="grid of construct attempts, JSON lines per cell")
    _add_param_args(p, lists=True)
    p.add_argument("--construction", choices=["main", "simple"], required=True)
    p.add_argument("--seed", type=seed_arg, required=True)
    p.add_argument("--attempts", type=int, default=10)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("diagnose", help="X_F / Z statistics on a main-construction artifact")
    _add_param_args(p)
    p.add_argument("--seed", type=seed_arg, required=True)
    p.add_argument("--sample-seed", type=seed_arg, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--edges", type=int, default=None, help="edges per sampled F (default ceil(t))")
    p.set_defaults(func=cmd_diagnose)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command in ("construct", "sweep", "diagnose"):
        # echo the invocation so every randomized run can be replayed
        print("# setramsey " + " ".join(shlex.quote(a) for a in (argv if argv is not None else sys.argv[1:])),
              file=sys.stderr)
    try:
        return args.func(args)
    except (ParameterError, ValueError) as exc:
        print(f"setramsey: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
