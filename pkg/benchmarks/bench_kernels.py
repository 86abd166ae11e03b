"""Compare the compiled kernel with the interpreted fallback.

    python benchmarks/bench_kernels.py [--n 6] [--repeat 3]

Each backend runs in its own interpreter because FPLPOLY_PURE is read at
import time.
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from fplpoly import fpl_grid, backend
n, rep = int(sys.argv[1]), int(sys.argv[2])
fpl_grid.census(2)  # trigger compilation outside the timing
best = None
for _ in range(rep):
    t = time.perf_counter()
    c = fpl_grid.census(n)
    dt = time.perf_counter() - t
    best = dt if best is None else min(best, dt)
print(json.dumps({"backend": backend(), "n": n, "total": sum(c.values()), "seconds": best}))
"""


def run(pure, n, repeat):
    env = dict(os.environ, FPLPOLY_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", CHILD, str(n), str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    fast = run(False, a.n, a.repeat)
    slow = run(True, a.n, a.repeat)
    assert fast["total"] == slow["total"]
    print(f"census n={a.n}: total {fast['total']}")
    print(f"  {fast['backend']:>7}: {fast['seconds']:.4f} s")
    print(f"  {slow['backend']:>7}: {slow['seconds']:.4f} s")
    print(f"  speedup x{slow['seconds'] / fast['seconds']:.1f}")


if __name__ == "__main__":
    main()
