"""Pass rate of each convention-sensitive identity under each phi convention.

Uses the same per-point draws as the sweep, so rows line up with sweep reports.
"""

import argparse

from bihumbert.identities import REGISTRY, SWEEP_POLICY, check_identity, sample_point
from bihumbert.qseries import CONVENTIONS as PHI_CONVENTIONS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=30)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    print(f"{'id':<7} {'reading':<12} " + " ".join(f"{c:>16}" for c in PHI_CONVENTIONS))
    for ident, entry in REGISTRY.items():
        if not entry.uses_convention:
            continue
        for reading in entry.readings:
            cells = []
            for conv in PHI_CONVENTIONS:
                passed = total = 0
                worst = 0.0
                for i in range(args.n):
                    case = check_identity(ident, sample_point(ident, args.seed, i), SWEEP_POLICY,
                                          reading=reading.name, convention=conv, index=i)
                    if case.status == "skipped":
                        continue
                    total += 1
                    passed += case.status == "pass"
                    worst = max(worst, case.residual)
                cells.append(f"{passed:>3}/{total:<3} {worst:8.1e}")
            print(f"{ident:<7} {reading.name:<12} " + " ".join(f"{c:>16}" for c in cells))


if __name__ == "__main__":
    main()
