"""Write the bundled fixture regions as region JSON files."""

import argparse
from pathlib import Path

from symlift import fixtures, io


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="fixtures")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, make in fixtures.ALL.items():
        path = out / f"{name}.json"
        path.write_text(io.dumps(io.region_to_json(make())))
        print(path)


if __name__ == "__main__":
    main()
