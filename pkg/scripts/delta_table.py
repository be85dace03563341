#!/usr/bin/env python3
"""Table of Delta(k, m) for a given alpha, checked against the direct determinant."""
import argparse

from wspaces.cubic import RepresentingMatrix
from wspaces.seqcore import parse_dualvec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", default="tail=geom(1/2,1/2)")
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--mmax", type=int, default=6)
    args = ap.parse_args()

    mat = RepresentingMatrix(parse_dualvec(args.alpha))
    width = 14
    print("k\\m".ljust(4) + "".join(str(m).rjust(width) for m in range(1, args.mmax + 1)))
    mismatches = 0
    for k in range(1, args.kmax + 1):
        cells = []
        for m in range(1, args.mmax + 1):
            v = mat.delta_recursive(k, m)
            mismatches += v != mat.delta_direct(k, m)
            cells.append(str(v).rjust(width))
        print(str(k).ljust(4) + "".join(cells))
    print(f"recursive vs direct mismatches: {mismatches}")
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
