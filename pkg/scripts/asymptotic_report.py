"""Exact log H(n, 3n) against the leading-order estimate; a report, not a test."""
import argparse
import json

from plancherel_hurwitz.hurwitz import comparison_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 48])
    ap.add_argument("--ratio", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args()
    rows = comparison_report(args.sizes, args.ratio)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'n':>4} {'ell':>5} {'log H':>12} {'estimate':>12} {'diff':>10} {'diff/n':>8}")
    for r in rows:
        print(f"{r['n']:>4} {r['ell']:>5} {r['log_H']:>12.3f} {r['log_estimate']:>12.3f} "
              f"{r['difference']:>+10.3f} {r['difference_per_n']:>+8.3f}")


if __name__ == "__main__":
    main()
