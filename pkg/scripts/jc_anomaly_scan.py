"""Map out where the stated exchange-coupling cap leaves [0, 1].

The high-temperature branch of the printed cap overshoots 1 on part of its
range and the two branches do not meet at the crossover.  This script scans
the stated expression, bisects the overshoot window's edges, and (optionally)
cross-checks the clamped cap against the explicit coupling-time scan:

    python3 scripts/jc_anomaly_scan.py --points 25 --time-check
"""

import argparse
import sys

import numpy as np

from threestroke import jc_time_scan, lambda_max_jc
from threestroke.restrictions import JC_BRANCH_POINT, jc_clamped, lambda_max_jc_raw


def bisect_edge(lo, hi, want_clamped_above, steps=200):
    """Edge of the clamped region between lo (not clamped) and hi (clamped)."""
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if jc_clamped(mid) == want_clamped_above:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--start", type=float, default=0.05, help="scan start")
    parser.add_argument("--stop", type=float, default=1.0, help="scan stop")
    parser.add_argument("--points", type=int, default=25, help="scan points")
    parser.add_argument(
        "--time-check", action="store_true",
        help="also run the coupling-time scan at a few temperatures",
    )
    args = parser.parse_args(argv)

    print(f"branch point: beta*omega = {JC_BRANCH_POINT:.12f}")
    print(f"{'beta*omega':>12} {'stated':>12} {'clamped':>12}  note")
    for bw in np.linspace(args.start, args.stop, args.points):
        raw = lambda_max_jc_raw(bw)
        note = "clamped" if jc_clamped(bw) else ""
        print(f"{bw:12.6f} {raw:12.8f} {lambda_max_jc(bw):12.8f}  {note}")

    onset = bisect_edge(0.21, JC_BRANCH_POINT, want_clamped_above=True)
    print(f"\novershoot window: ({onset:.9f}, {JC_BRANCH_POINT:.9f}]")
    print(f"largest stated value: {lambda_max_jc_raw(JC_BRANCH_POINT):.9f} at the branch point")
    drop = lambda_max_jc(JC_BRANCH_POINT) - lambda_max_jc(JC_BRANCH_POINT + 1e-12)
    print(f"branch mismatch at the crossover: the cap drops by {drop:.9f}")

    if args.time_check:
        print(f"\n{'beta*omega':>12} {'clamped cap':>12} {'time scan':>12} {'gap':>10}")
        for bw in (0.5, 1.0, 2.0):
            cap = lambda_max_jc(bw)
            scanned = jc_time_scan(bw)
            print(f"{bw:12.3f} {cap:12.8f} {scanned:12.8f} {cap - scanned:10.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
