#!/usr/bin/env python3
"""Per-family revision and contraction operator counts over one atom."""
import time

from esbc.audit import audit_signature, find_count_asymmetry, summarize_asymmetry


def main():
    sig = audit_signature(1)
    t0 = time.perf_counter()
    records = find_count_asymmetry(1)
    print(f"{'family':<28} {'contraction':>11} {'revision':>9} {'naive':>9}")
    for r in records:
        fam = " ".join(sig.show(m) for m in r.family)
        naive = "-" if r.naive_contraction is None else f"{r.naive_contraction}/{r.naive_revision}"
        print(f"{fam:<28} {r.contraction:>11} {r.revision:>9} {naive:>9}")
    s = summarize_asymmetry(records)
    print(f"more contraction: {len(s['more_contraction'])}, more revision: {len(s['more_revision'])}, "
          f"equal: {len(s['equal'])}; all naive counts agree: {all(r.agree for r in records)}")
    print(f"{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
