"""Compare tree-formula moments with growth-path moments over all small shapes."""

import argparse
import sys
import time

from threshold_cumulants.cli import verify_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-boxes", type=int, default=6)
    parser.add_argument("--max-order", type=int, default=4)
    args = parser.parse_args()

    start = time.perf_counter()
    result = verify_sweep(args.max_boxes, args.max_order)
    elapsed = time.perf_counter() - start
    print(f"checked {result['checked']} moments in {elapsed:.1f}s, {len(result['mismatches'])} mismatches")
    for m in result["mismatches"][:20]:
        print(m)
    sys.exit(1 if result["mismatches"] else 0)


if __name__ == "__main__":
    main()
