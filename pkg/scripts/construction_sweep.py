#!/usr/bin/env python3
"""Build and verify every construction over all fields up to a size limit
(the acceptance sweep, runnable on its own)."""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from acceptance_corpus import construction_sweep  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=1 << 10, help="largest q")
    args = ap.parse_args()
    t = time.time()
    codes, failures, counts = construction_sweep(
        args.limit, on_field=lambda p, m: print(f"done F_{p}^{m}  {time.time() - t:.0f}s", flush=True))
    for key in sorted(counts):
        print(f"{key[0]:>14} {key[1]:<22} {counts[key]}")
    print(f"{len(codes)} verified codes, {len(failures)} failures, {time.time() - t:.0f}s")
    for f in failures:
        print("FAIL", f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
