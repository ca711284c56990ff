#!/usr/bin/env python3
"""Numeric comparison of the bounds touching the original Bell inequality.

Four numbers frame the story for states with perfect correlations:

* 1            classical bound (LHV models, checked by Monte-Carlo)
* 3/2          quantum maximum over +-1 observables for certified states
* 2 sqrt(2)-1  what the Tsirelson bound alone would allow for the same
               three-correlator combination
* 2 sqrt(2)    Tsirelson value of the four-correlator CHSH combination

The script evaluates all four on the maximally entangled two-qubit state and
prints the strict orderings between them.

    python scripts/bound_comparators.py --models 50000 --restarts 64
"""

import argparse

import numpy as np

from quditbell import (
    MaximizeOptions,
    chsh_optimal_settings,
    chsh_value,
    exhaustive_qubit_max,
    ghz,
    lhv_monte_carlo,
    maximize_bell,
    scalar_bound,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--models", type=int, default=50000)
    parser.add_argument("--restarts", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    state = ghz(2)

    lhv = max(
        lhv_monte_carlo(1, args.models, seed=args.seed).max_bell_value,
        lhv_monte_carlo(-1, args.models, seed=args.seed + 1).max_bell_value,
    )
    quantum = max(
        maximize_bell(state, sign, MaximizeOptions(restarts=args.restarts, seed=args.seed)).best_value
        for sign in (1, -1)
    )
    oracle = exhaustive_qubit_max(state, 1, 200)
    chsh = chsh_value(state, *chsh_optimal_settings(state))
    scalar, argmax = scalar_bound()
    tsirelson_derived = 2 * np.sqrt(2) - 1

    print(f"LHV maximum over {args.models} constrained models : {lhv:.9f}  (bound 1)")
    print(f"quantum maximum, optimizer ({args.restarts} restarts)     : {quantum:.9f}")
    print(f"quantum maximum, d=2 grid oracle            : {oracle:.9f}")
    print(f"scalar reduction max sqrt(2(1-z)) + z       : {scalar:.9f}  at z = {argmax:.6f}")
    print(f"CHSH with optimal settings                  : {chsh:.9f}  (2 sqrt(2) = {2*np.sqrt(2):.9f})")
    print(f"CHSH-derived three-correlator cap            : {tsirelson_derived:.9f}")
    print()
    print(f"orderings: {lhv:.6f} (LHV) < {quantum:.6f} (quantum) "
          f"< {tsirelson_derived:.6f} (2 sqrt(2) - 1): "
          f"{lhv < quantum < tsirelson_derived}")
    print(f"the sharp quantum value 3/2 sits strictly below 2 sqrt(2) - 1: "
          f"{1.5 < tsirelson_derived}")


if __name__ == "__main__":
    main()
