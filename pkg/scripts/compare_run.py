"""Compare a pipeline output directory with the published BitMEX tables.

Only meaningful when the run used the original price and liquidation files;
on other data it still shows the layouts side by side.
"""
import argparse
import json
from pathlib import Path

from evtmargin import reference

PROBS = reference.PROBABILITIES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("run_dir", type=Path)
    args = ap.parse_args()
    d = args.run_dir

    t2 = json.loads((d / "table2.json").read_text())
    print("GEV parameters: run vs published (tau, sigma, mu)")
    for r in t2:
        pub = reference.GEV_PARAMS.get((r["kind"], r["tail"]), {}).get(r["frequency"])
        ref = "  ".join(f"{v:7.4f}" for v in pub[:3]) if pub else "-"
        print(f"  {r['tail']:6} {r['kind']:9} {r['frequency']:5}  "
              f"{r['tau']:7.4f}  {r['sigma']:7.4f}  {r['mu']:7.4f}   |  {ref}")

    t3 = json.loads((d / "table3.json").read_text())
    print("\nOptimal margins (%): run vs published")
    for r in t3:
        try:
            i = PROBS.index(r["probability"])
            pub = reference.GEV_MARGINS[(r["kind"], r["position"])][r["frequency"]][i]
        except (KeyError, ValueError):
            pub = float("nan")
        print(f"  {r['position']:6} {r['kind']:9} {r['frequency']:5} p={r['probability']:<6} "
              f"{r['gev_margin']:8.2f}  |  {pub:8.2f}")

    t4 = d / "table4.json"
    if t4.exists():
        table = json.loads(t4.read_text())
        print("\nLiquidation summary (mean): run vs published")
        for col, pub in reference.LIQUIDATION_SUMMARY.items():
            print(f"  {col:14} {table[col]['mean']:10.2f}  |  {pub['mean']:10.2f}")


if __name__ == "__main__":
    main()
