"""Tabulate the q -> 1 gap between Psi_q and the classical Humbert functions.

Prints one row per (function, scaling) with the gap at q = p in {0.9, 0.99, 0.999}
and the shrink ratio per step, then the extrapolated value for the confluent scaling.
"""

import argparse

from bihumbert.humbert import classical_limit_study, extrapolated_limit, psi1_classical, psi2_classical
from bihumbert.qcore import TruncationPolicy

SCALINGS = ("printed", "symmetric", "confluent")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--point", type=float, nargs=6, default=[1, 1, 2, 2, 0.2, 0.1],
                    metavar=("A", "B", "C", "D", "X", "Y"))
    args = ap.parse_args()
    a, b, c, d, x, y = args.point
    policy = TruncationPolicy(rel_tol=1e-16)

    print(f"{'function':<8} {'scaling':<10} {'gap 0.9':>10} {'gap 0.99':>10} {'gap 0.999':>10}  ratios")
    for which in ("psi1", "psi2"):
        for scaling in SCALINGS:
            s = classical_limit_study(which, a, b, c, d, x, y, scaling, policy=policy)
            gaps = " ".join(f"{g:>10.3g}" for g in s.gaps)
            ratios = ", ".join(f"{r:.3g}" for r in s.ratios)
            print(f"{which:<8} {scaling:<10} {gaps}  {ratios}{'  converges' if s.converges else ''}")

    exact = {"psi1": psi1_classical(a, b, c, d, x, y, policy).value,
             "psi2": psi2_classical(a, b, c, x, y, policy).value}
    for which in ("psi1", "psi2"):
        ext = extrapolated_limit(which, a, b, c, d, x, y, policy=policy)
        err = abs(ext.value - exact[which]) / abs(exact[which])
        print(f"{which} confluent extrapolation {ext.value:.15g}  classical {exact[which]:.15g}  rel err {err:.1e}")


if __name__ == "__main__":
    main()
