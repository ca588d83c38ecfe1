"""Run criteria 1-7 (twice, for the determinism check) and print a summary table.

    python3 scripts/run_acceptance.py [--seed N] [--json out.json]
"""

import argparse
import json
import time

from borelkit import suites


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="write the first-run reports here")
    args = ap.parse_args()

    reports = {}
    for k in sorted(suites.SUITES):
        t0 = time.perf_counter()
        reports[k] = suites.run_criterion(k, args.seed)
        print(f"criterion {k} {reports[k]['name']:<16} {'PASS' if reports[k]['passed'] else 'FAIL'}"
              f"  {time.perf_counter() - t0:6.2f}s")
    again = {k: suites.run_criterion(k, args.seed) for k in reports}
    same = all(json.dumps(reports[k], sort_keys=True, default=str)
               == json.dumps(again[k], sort_keys=True, default=str) for k in reports)
    print(f"criterion 8 determinism       {'PASS' if same else 'FAIL'}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(list(reports.values()), fh, indent=2, default=str)


if __name__ == "__main__":
    main()
