#!/usr/bin/env python3
"""Reproduce the above-half size chains for k = 6, 7, 8 and print them."""
import argparse
import json

from cubeint.theorems import verify_large_sets


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, nargs="*", default=[6, 7, 8])
    parser.add_argument("--out", help="write the combined JSON report here")
    args = parser.parse_args()

    reports = {}
    failed = False
    for k in args.k:
        report = verify_large_sets(k)
        reports[k] = report.to_json_dict()
        failed = failed or not report.passed
        for check in report.checks:
            marker = "ok " if check.passed else "FAIL"
            print(f"[{marker}] k={k}: {check.name}")
            if "computed" in check.details:
                print(f"        {check.details['computed']}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(reports, handle, indent=2, sort_keys=True, default=str)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
