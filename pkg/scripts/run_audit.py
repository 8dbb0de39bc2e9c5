#!/usr/bin/env python3
"""Run the theorem and equivalence audits and write JSON lines.

    python scripts/run_audit.py --atoms 2 --samples 500 --seed 7 --out audit_n2.jsonl
"""
import argparse
import json
import time

from esbc.audit import audit_equivalences, audit_theorems


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--atoms", type=int, choices=[1, 2], default=2)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    args = p.parse_args()

    t0 = time.perf_counter()
    th = audit_theorems(args.atoms, args.samples, args.seed)
    eq = audit_equivalences(args.atoms, args.samples, args.seed)
    elapsed = time.perf_counter() - t0

    mix = {}
    for rec in th.records:
        key = (rec["zc"], rec["zr1"] and rec["zr2"], rec["unbiased"])
        mix[key] = mix.get(key, 0) + 1
    print(f"n={args.atoms}: {len(th.records)} spaces in {elapsed:.2f}s")
    print(f"theorem checks: {th.agreements}/{th.checks}, falsifications: {len(th.falsifications)}")
    print(f"equivalence falsifications: {len(eq.falsifications)}")
    print("verdict mix (ZC, ZR1&ZR2, Unbiased):")
    for key, count in sorted(mix.items()):
        print(f"  {key}: {count}")
    nodes = [r["nodes"]["contraction"] + r["nodes"]["revision"] for r in th.records]
    print(f"search nodes per space: max {max(nodes)}, total {sum(nodes)}")
    if args.out:
        with open(args.out, "w") as fh:
            for rec in th.records + eq.records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
