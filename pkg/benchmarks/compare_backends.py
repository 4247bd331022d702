"""Time the compiled core against the pure-Python fallback.

    python3 benchmarks/compare_backends.py [--reps N]
"""

import argparse
import sys
from collections import defaultdict

from kacfpga import backend, bench


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--csv", action="store_true", help="raw CSV instead of a table")
    args = parser.parse_args(argv)

    rows = bench.compare_backends(args.reps)
    if args.csv:
        sys.stdout.write(bench.backends_csv(rows))
        return 0
    table = defaultdict(dict)
    for name, kernel, seconds in rows:
        table[kernel][name] = 1e3 * seconds
    names = backend.available()
    print(f"{'kernel':<22}" + "".join(f"{n + ' ms':>14}" for n in names) + f"{'speedup':>10}")
    for kernel, times in table.items():
        cells = "".join(f"{times[n]:>14.3f}" for n in names)
        speedup = times["python"] / times["native"] if "native" in times else float("nan")
        print(f"{kernel:<22}{cells}{speedup:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
