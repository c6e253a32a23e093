"""Recompute the extended-precision oracle values and write tests/data/oracle_values.json.

Run once after changing the fixed points; the tests read the frozen file.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracle  # noqa: E402

# a, b, c, d, q, p, x, y
DEFINITION_POINTS = [
    (1.0, 1.0, 1.0, 1.0, 0.5, 0.3, 0.2, 0.1),
    (0.5, 1.5, 2.0, 0.8, 0.3, 0.7, 0.25, -0.15),
    (1.7, 0.6, 1.2, 1.9, 0.7, 0.5, 0.1 + 0.2j, 0.05 - 0.1j),
    (1.3, 1.1, 0.9, 0.5, 0.5, 0.5, -0.3, 0.3),
    (2.0, 2.0, 0.5, 1.4, 0.7, 0.3, 0.12 - 0.25j, 0.28),
    (0.8, 1.8, 1.6, 1.1, 0.3, 0.3, -0.2 + 0.2j, 0.2 + 0.2j),
    (1.5, 0.5, 1.9, 2.0, 0.5, 0.7, 0.3j, -0.3j),
    (0.6, 1.3, 0.7, 1.6, 0.7, 0.7, 0.15, 0.15 + 0.15j),
    (1.9, 0.9, 1.4, 0.6, 0.3, 0.5, -0.1 - 0.25j, 0.22),
    (1.0, 1.2, 0.8, 1.0, 0.5, 0.3, 0.2, 0.1),
]


def cjson(z):
    z = complex(z)
    return [z.real, z.imag]


def main():
    out = {"dps": oracle.DPS, "definition": [], "classical": [], "scalars": {}}
    for a, b, c, d, q, p, x, y in DEFINITION_POINTS:
        out["definition"].append({
            "a": a, "b": b, "c": c, "d": d, "q": q, "p": p, "x": cjson(x), "y": cjson(y),
            "psi1": cjson(oracle.psi1(a, b, c, d, q, p, x, y)),
            "psi2": cjson(oracle.psi2(a, b, c, q, p, x, y)),
        })
        print("definition point done", flush=True)
    out["psi2_spec_point"] = cjson(oracle.psi2(1, 1, 1, 0.4, 0.6, 0.15, 0.25))
    out["classical"] = {
        "psi1": cjson(oracle.classical_psi1(1, 1, 2, 2, 0.2, 0.1)),
        "psi2": cjson(oracle.classical_psi2(1, 1, 2, 0.2, 0.1)),
    }
    s = out["scalars"]
    s["qpoch_inf_half"] = cjson(oracle.qpoch_inf(0.5, 0.5))
    s["phi21_q_q_q2"] = cjson(oracle.phi21(0.5, 0.5, 0.25, 0.5, 0.25))
    s["E_half_at_1"] = cjson(oracle.q_exp_E(1.0, 0.5))
    s["E_half_at_minus_half"] = cjson(oracle.q_exp_E(-0.5, 0.5))
    s["qgamma_grid"] = [
        {"b": b, "p": p, "value": cjson(oracle.q_gamma(b, p))}
        for b in (0.5, 1.3, 2.7, 4.1) for p in (0.2, 0.5, 0.8)
    ]
    path = ROOT / "tests" / "data" / "oracle_values.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
