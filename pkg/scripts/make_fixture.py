"""Regenerate the bundled synthetic inputs in tests/data/."""
import argparse
from pathlib import Path

from evtmargin import synthetic

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "tests" / "data")
    ap.add_argument("--points", type=int, default=50_000)
    ap.add_argument("--days", type=int, default=372)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    synthetic.write_price_csv(args.out / "prices.csv", n=args.points, seed=7)
    synthetic.write_ohlcv_csv(args.out / "ohlcv.csv", n_days=args.days, seed=11)
    print(f"wrote {args.out / 'prices.csv'} and {args.out / 'ohlcv.csv'}")
