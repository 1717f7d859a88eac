#!/usr/bin/env python3
"""Brute-force reference values for the risk/trust regressions.

Everything here is computed with exact fractions straight from the
definitions (mean, below-mean count, semi-deviation, median of a sorted
list, the general-trust recurrence). The C++ suites freeze the numbers
printed by this script; running it with --check asserts they still agree.
"""
import argparse
import math
import sys
from fractions import Fraction as F

REFERENCE_WINDOW = [F(8, 10), F(7, 10), F(8, 10), F(6, 10), F(7, 10), F(5, 10), F(2, 10), F(7, 10)]


def median(values):
    ordered = sorted(values)
    size = len(ordered)
    if size % 2:
        return ordered[size // 2]
    return (ordered[size // 2 - 1] + ordered[size // 2]) / 2


def semi_variance(values):
    mean = sum(values) / len(values)
    below = [v for v in values if v < mean]
    if not below:
        return F(0)
    return sum((v - mean) ** 2 for v in below) / len(below)


def general_trust(prev, ex_med, k):
    return (prev + k * ex_med) / (k + 1)


def erratic_semi_deviation(center, spike_p, floor):
    # Exact population semi-deviation of erratic(center, p, floor) with zero jitter.
    dist = {center: 1 - spike_p}
    span = list(range(floor, center))
    for v in span:
        dist[v] = dist.get(v, 0) + spike_p / len(span)
    mean = sum(F(v, 10) * p for v, p in dist.items())
    below_mass = sum(p for v, p in dist.items() if F(v, 10) < mean)
    num = sum((F(v, 10) - mean) ** 2 * p for v, p in dist.items() if F(v, 10) < mean)
    return mean, math.sqrt(num / below_mass)


FROZEN = {
    "reference_median": F(7, 10),
    "reference_semi_variance": F(196875, 3000000),
    "update_k1": F(6, 10),
    "update_k3": F(65, 100),
    "sim_td_gen": [F(65, 100), F(725, 1000), F(7625, 10000)],
    "median_020209": F(2, 10),
    "reputation_020806": F(6, 10),
}


def compute():
    out = {
        "reference_median": median(REFERENCE_WINDOW),
        "reference_semi_variance": semi_variance(REFERENCE_WINDOW),
        "update_k1": general_trust(F(1, 2), F(7, 10), 1),
        "update_k3": general_trust(F(1, 2), F(7, 10), 3),
        "median_020209": median([F(2, 10), F(2, 10), F(9, 10)]),
        "reputation_020806": median([F(2, 10), F(8, 10), F(6, 10)]),
    }
    td = F(1, 2)
    seq = []
    for _ in range(3):
        td = general_trust(td, F(8, 10), 1)
        seq.append(td)
    out["sim_td_gen"] = seq
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--check", action="store_true")
    args = parser.parse_args()
    values = compute()
    for key, value in values.items():
        print(f"{key} = {value}")
    print(f"reference_rv = {math.sqrt(values['reference_semi_variance']):.17g}")
    mean, sd = erratic_semi_deviation(8, F(3, 10), 0)
    print(f"erratic(0.8,0.3,0.0) mean = {mean} semi_deviation = {sd:.17g}")

    if args.check:
        for key, expected in FROZEN.items():
            if values[key] != expected:
                print(f"MISMATCH {key}: {values[key]} != {expected}", file=sys.stderr)
                return 1
        rv = math.sqrt(values["reference_semi_variance"])
        if abs(rv - math.sqrt(0.196875 / 3)) > 1e-12:
            print("MISMATCH reference_rv", file=sys.stderr)
            return 1
        if sd <= 0.1:
            print("MISMATCH erratic semi-deviation not above 0.1", file=sys.stderr)
            return 1
        print("oracle check ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
