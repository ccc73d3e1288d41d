"""Concurrence and both bounds along the Werner family p|singlet><singlet| + (1-p) I/4.

    python scripts/werner_profile.py --points 21
"""

import argparse

import numpy as np

from entbounds.bounds import lower_bound, upper_bound
from entbounds.measures import concurrence_two_qubit
from entbounds.states import BipartiteSplit, QuantumState

QUBITS = BipartiteSplit(2, 2)


def werner(p):
    s = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return QuantumState(p * np.outer(s, s) + (1 - p) * np.eye(4) / 4, QUBITS)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--points", type=int, default=11)
    args = ap.parse_args()

    print(f"{'p':>6} {'C^2':>10} {'lower':>10} {'upper':>10} {'C^2 - max(lower, 0)':>20}")
    for p in np.linspace(0.0, 1.0, args.points):
        rho = werner(p)
        c2 = concurrence_two_qubit(rho) ** 2
        lo, up = lower_bound(rho), upper_bound(rho)
        print(f"{p:6.3f} {c2:10.6f} {lo:10.6f} {up:10.6f} {c2 - max(lo, 0.0):20.6f}")
    # the lower bound certifies entanglement for p > 1/sqrt(3); the state is entangled for p > 1/3
    print(f"\nlower bound turns positive at p = {1 / np.sqrt(3):.6f}; entangled for p > {1 / 3:.6f}")


if __name__ == "__main__":
    main()
