#!/usr/bin/env python3
"""Print the closed-form tables: the codim-1 rows and the whole-cube window."""
import argparse

from cubeint.codim1 import codim1_table, large_codim1_sizes
from cubeint.theorems import h_n_window


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, nargs="*", default=[6, 7, 8])
    parser.add_argument("--n", type=int, nargs="*", default=[8, 10])
    args = parser.parse_args()

    print("a\tb\tt")
    for a, b, t in codim1_table():
        print(f"{a}\t{b}\t{t}")
    for k in args.k:
        print(f"large sizes, one condition, k={k}: {list(large_codim1_sizes(k).sizes)}")
    for n in args.n:
        sizes, _ = h_n_window(n)
        print(f"top-quarter window, n={n}: {list(sizes.sizes)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
