"""Conditional K14 for each x outcome pair on memories 2 and 3.

Only the (+,+) branch reproduces cos(3a); the other three give cos(a).
The probability-weighted mean of all four is the recorded cos(a)^3.
"""
import argparse
import math

from temporal_bell.erasure import erasure_branches
from temporal_bell.protocol import ProtocolConfig, run_protocol


def main():
    p = argparse.ArgumentParser()
    p.add_argument("alphas", nargs="*", type=float, default=[0.3, math.pi / 4, 1.2])
    args = p.parse_args()

    print(f"{'alpha':>8} {'pair':>4} {'prob':>8} {'k14':>12} {'cos3a':>12} {'cos a':>12}")
    for a in args.alphas:
        branches = erasure_branches(run_protocol(ProtocolConfig(a)))
        for b in branches:
            print(f"{a:8.4f} {b.outcomes.label():>4} {b.probability:8.5f} {b.k14:12.8f} "
                  f"{math.cos(3 * a):12.8f} {math.cos(a):12.8f}")
        mean = sum(b.probability * b.k14 for b in branches)
        print(f"{'':8} {'avg':>4} {'':8} {mean:12.8f}  cos^3 a = {math.cos(a) ** 3:.8f}")


if __name__ == "__main__":
    main()
