"""Lift every bundled fixture and print its diagnostics or its obstruction."""

from symlift import fixtures
from symlift.errors import LiftObstruction
from symlift.lifting import lift_region, verify


def main():
    for name, make in fixtures.ALL.items():
        region = make()
        try:
            result = lift_region(region)
        except LiftObstruction as exc:
            print(f"{name:<18} obstructed  {type(exc).__name__}: {exc}")
            continue
        d = result.diagnostics
        verdicts = " ".join(f"{c['name']}={c['verdict']}" for c in verify(region, result.lift).checks)
        print(f"{name:<18} {region.size:>5} nodes  segments {d['segments']:>2}  "
              f"events {d['events']:>2}  passing {len(d['passing_nodes']):>2}  "
              f"max step {d['max_step_displacement']:.4f}  {verdicts}")
        print(f"{'':<18} first {result.lift[0]}  last {result.lift[-1]}")


if __name__ == "__main__":
    main()
