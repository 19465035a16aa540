"""Recompute the published optimal-margin table from the published GEV parameters.

Prints each panel in the published layout with the recomputed value and, in
brackets, the difference from the printed value.
"""
import argparse

from evtmargin import reference
from evtmargin.margins import margin_table, normal_margin

PROBS = reference.PROBABILITIES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=0.05)
    args = ap.parse_args()
    rows = margin_table(reference.all_gev_params(), {}, PROBS,
                        kinds=reference.KINDS, frequencies=reference.FREQUENCIES)
    cell = {(r.kind, r.frequency, r.position, r.probability): r.gev_margin for r in rows}
    flagged = 0
    for panel, pos in (("A", "short"), ("B", "long"), ("C", "common")):
        print(f"\nPanel {panel}: {pos} position")
        print(f"{'':6}" + "".join(f"{k:>64}" for k in reference.KINDS))
        print(f"{'p':6}" + "".join(f"{p:>16}" for _ in reference.KINDS for p in PROBS))
        for freq in reference.FREQUENCIES:
            line = f"{freq:6}"
            norm = f"{'':6}"
            for kind in reference.KINDS:
                for i, p in enumerate(PROBS):
                    v = cell[(kind, freq, pos, p)]
                    d = v - reference.GEV_MARGINS[(kind, pos)][freq][i]
                    flagged += abs(d) > args.tol
                    line += f"{v:.2f} [{d:+.2f}]{'*' if abs(d) > args.tol else ' '}".rjust(16)
                    if pos != "common":
                        mean, sd = reference.CHANGE_MOMENTS[kind][freq]
                        norm += f"({normal_margin(100 * mean, 100 * sd, p, pos):.2f})  ".rjust(16)
            print(line)
            if pos != "common":
                print(norm)
    print(f"\n{flagged} cell(s) differ from the printed table by more than {args.tol}")


if __name__ == "__main__":
    main()
