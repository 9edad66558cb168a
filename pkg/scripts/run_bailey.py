"""Verify the Bailey sum to a chosen number of digits and print the convergence profile.

    python3 scripts/run_bailey.py --digits 50
    python3 scripts/run_bailey.py --digits 200 --profile bailey200.csv
"""
import argparse
import csv
import json

from cnct.bailey import verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=50)
    ap.add_argument("--json", action="store_true", help="print the report as JSON")
    ap.add_argument("--profile", help="write order,correct_digits rows to this CSV file")
    args = ap.parse_args()

    report, result = verify(args.digits)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(report.render())
        print(f"terminated       : {result.terminated}")
    if args.profile:
        with open(args.profile, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["order", "correct_digits"])
            for row, c in zip(result.transform_trace, report.correct_digits):
                w.writerow([row.order, f"{c:.3f}"])


if __name__ == "__main__":
    main()
