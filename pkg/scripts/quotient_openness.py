"""Check openness of the sorting map and the support map on every small finite space.

For each topology on up to ``n`` points and each ``m``, images of all product
basis opens are tested for openness in the quotient topologies, together with
the saturation identities.  Prints one summary row per ``(n, m)`` and the first
non-open support-map image found.
"""

import argparse

from symlift.finitetop import build_quotients, enumerate_topologies


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--m", type=int, default=3)
    args = ap.parse_args()

    print(f"{'n':>2} {'m':>2} {'spaces':>7} {'sp open':>8} {'f open':>7} {'saturated':>10}")
    example = None
    for n in range(1, args.n + 1):
        for m in range(1, args.m + 1):
            spaces = enumerate_topologies(n)
            sp_ok = f_ok = sat_ok = 0
            for t in spaces:
                c = build_quotients(t, m).checks
                sp_ok += not c.sp_open_failures
                f_ok += not c.f_open_failures
                sat_ok += not (c.sp_saturation_failures or c.f_saturation_failures)
                if c.f_open_failures and example is None:
                    example = (t.to_json(), m, c.f_open_failures[0]["basis_open"])
            print(f"{n:>2} {m:>2} {len(spaces):>7} {sp_ok:>8} {f_ok:>7} {sat_ok:>10}")
    if example:
        space, m, box = example
        print(f"support map not open: opens {space['opens']}, m={m}, basis open {box}")


if __name__ == "__main__":
    main()
