"""How tight are the two bounds on random mixed states?

For each rank, report the mean and worst width upper - lower and, on two
qubits, where C^2 sits inside the interval. Off two qubits the searched c*
is used, which only upper-estimates C.

    python scripts/bounds_gap_survey.py --samples 2000
    python scripts/bounds_gap_survey.py --dims 2 3 --samples 50 --restarts 5
"""

import argparse

import numpy as np

from entbounds.bounds import lower_bound, upper_bound
from entbounds.decompositions import SearchConfig, minimize_average_concurrence
from entbounds.ensembles import SeedSpec, random_density
from entbounds.measures import concurrence_two_qubit
from entbounds.states import BipartiteSplit


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--dims", type=int, nargs=2, default=(2, 2))
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--restarts", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    split = BipartiteSplit(*args.dims)
    d = split.total
    exact = (split.dimA, split.dimB) == (2, 2)
    print(f"split {split}, {args.samples} states per rank, reference: {'closed form' if exact else 'search'}")
    print(f"{'rank':>4} {'width':>9} {'max width':>10} {'entangled':>10} {'certified':>10} {'rel pos':>8}")
    for r in range(1, d + 1):
        widths, pos, ent, cert = [], [], 0, 0
        for i in range(args.samples):
            rho = random_density(d, r, SeedSpec(args.seed, i, (r,))).with_split(split)
            lo, up = lower_bound(rho), upper_bound(rho)
            if exact:
                c = concurrence_two_qubit(rho)
            else:
                _, c = minimize_average_concurrence(
                    rho, split, SearchConfig(restarts=args.restarts, seed=SeedSpec(args.seed, i, (r, 1))))
            lo_c = max(lo, 0.0)
            widths.append(up - lo_c)
            if up - lo_c > 1e-12:
                pos.append((c * c - lo_c) / (up - lo_c))
            ent += c > 1e-6
            cert += lo > 1e-12
        print(f"{r:4d} {np.mean(widths):9.4f} {np.max(widths):10.4f} {ent:10d} {cert:10d} "
              f"{np.mean(pos) if pos else float('nan'):8.3f}")
    print("\nwidth = upper - max(lower, 0); certified = lower bound > 0; rel pos = where C^2 falls in [lower, upper]")


if __name__ == "__main__":
    main()
