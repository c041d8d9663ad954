#!/usr/bin/env python3
"""Scan the singular-weight bounds h_even <= A and h_odd <= A over wide index
windows and report the largest gap A - h observed (tightness witness)."""
import argparse
import sys
from fractions import Fraction as Q
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from wmin import catalog
from wmin.catalog import lookup
from wmin.levels import enumerate_unitary_k, level_data
from wmin.unitarity import sign2_scan, h_even, h_odd
from wmin.weights import A_bound, enumerate_P_plus_k, is_extremal
from wmin.rationals import format_rational as fr

FAMILIES = {
    "psl22": catalog.psl22, "spo23": lambda: catalog.spo2m(3),
    "spo25": lambda: catalog.spo2m(5), "spo26": lambda: catalog.spo2m(6),
    "D21a": lambda: catalog.d21a(2, 3), "F4": catalog.f4, "G3": catalog.g3,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=sorted(FAMILIES), default="psl22")
    ap.add_argument("--max-m1", type=int, default=4)
    ap.add_argument("--window", type=int, default=12)
    args = ap.parse_args()

    g = FAMILIES[args.family]()
    e = lookup(g)
    best = None
    total = violations = 0
    for k in enumerate_unitary_k(g, 40):
        if level_data(g, k).M_simple[0] > args.max_m1:
            break
        for nu in enumerate_P_plus_k(g, k):
            if is_extremal(g, k, nu):
                continue
            rep = sign2_scan(g, k, nu, args.window, args.window)
            total += rep.checked
            violations += len(rep.violations)
            a = A_bound(g, k, nu)
            gap = min(a - h_even(g, k, nu, Q(1, e.epsilon), Q(1, e.epsilon)),
                      min(a - h_odd(g, k, nu, Q(1, 2), gm)
                          for gm, _ in e.delta_prime))
            if best is None or gap < best[0]:
                best = (gap, k, nu)
    print(f"{g.label()}: {total} bound evaluations, {violations} violations")
    if best:
        gap, k, nu = best
        print(f"tightest margin A - h = {fr(gap)} at k = {fr(k)}, "
              f"nu = ({', '.join(fr(c) for c in nu)})")


if __name__ == "__main__":
    main()
