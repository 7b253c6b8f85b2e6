#!/usr/bin/env python3
"""Orbit of the standard hyperbolic pair under elementary transvections.

For (Z/m)[G] with small m and G, and H(P) of rank r (optionally plus a
hyperbolic V), enumerate every hyperbolic pair by brute force and count how
many lie in the orbit of the standard pair. Prints one line per setting.
Rank 1 is included on purpose: there the orbit is usually a proper subset.

    python3 scripts/transitivity_survey.py [--max-depth 12]
"""

import argparse
import time

from qforms.forms import hyperbolic
from qforms.groups import TRIVIAL_GROUP, FiniteGroup
from qforms.pairs import BassModule, all_generators, enumerate_hyperbolic_pairs, orbit
from qforms.rings import FormParameter, GroupRing

SETTINGS = [
    # (modulus, group, rank of P, rank of the hyperbolic V)
    (2, TRIVIAL_GROUP, 1, 0),
    (2, TRIVIAL_GROUP, 2, 0),
    (3, TRIVIAL_GROUP, 1, 0),
    (3, TRIVIAL_GROUP, 2, 0),
    (2, TRIVIAL_GROUP, 1, 1),
    (2, FiniteGroup.cyclic(2, -1), 1, 0),
    (2, FiniteGroup.cyclic(2, 1), 1, 0),
]


def survey(m, group, r, v_rank, max_depth):
    form = FormParameter(GroupRing(group, modulus=m))
    V = hyperbolic(form, v_rank) if v_rank else None
    bm = BassModule.over(form, r, V)
    pairs = enumerate_hyperbolic_pairs(bm)
    gens = all_generators(bm)
    parents, depth, status = orbit(bm, bm.standard_pair(), gens, max_depth=max_depth)
    reached = sum((pr.p, pr.q) in parents for pr in pairs)
    return len(pairs), reached, len(gens), depth, status


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-depth", type=int, default=12)
    args = ap.parse_args()
    print(f"{'ring':<14} {'r':>2} {'V':>2} {'pairs':>6} {'reached':>8} {'gens':>5} {'status':>8}")
    for m, group, r, v_rank in SETTINGS:
        t0 = time.perf_counter()
        n, reached, ngen, depth, status = survey(m, group, r, v_rank, args.max_depth)
        name = f"Z/{m}[G{group.order}{'-' if -1 in group.omega else ''}]"
        print(f"{name:<14} {r:>2} {2 * v_rank:>2} {n:>6} {reached:>8} {ngen:>5} {status:>8}"
              f"   ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
