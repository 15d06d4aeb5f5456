"""Sweep every registered statement over finite spaces and write a JSON report."""

import argparse
import json
import time

from symlift.finitetop import audit_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, nargs="?", default=3, help="largest space size (1..4)")
    ap.add_argument("--out", default="audit_report.json")
    args = ap.parse_args()

    start = time.perf_counter()
    reports = audit_all(args.n)
    for r in reports:
        mark = "ok" if r.as_expected else "UNEXPECTED"
        print(f"{r.lemma:<56} {r.verdict:<6} {r.universe['cases']:>9} cases  {mark}")
    with open(args.out, "w") as fh:
        json.dump([r.to_json() for r in reports], fh, indent=1)
    print(f"{len(reports)} statements in {time.perf_counter() - start:.2f}s -> {args.out}")


if __name__ == "__main__":
    main()
