#!/usr/bin/env python3
"""Reproduce the BER and leakage sweeps for all three PSK schemes.

Writes one CSV per scheme to results/ (legitimate + eavesdropper rows).
Default payload is 10^5 bits per point for a quick look; pass --full for
10^6-bit points (the sizing used by the acceptance gate).
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from hypervlc.config import SimConfig, align_bits
from hypervlc.harness import records_to_csv, run_ber_sweep
from hypervlc.mapping import Modulation


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true",
                    help="1e6 bits per point instead of 1e5")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    bits = 1_000_000 if args.full else 100_000

    for scheme in (Modulation.BPSK, Modulation.QPSK, Modulation.PSK8):
        cfg = SimConfig(
            scheme=scheme,
            bits_per_point=align_bits(bits, 63 * scheme.bits_per_symbol),
            rng_seed=args.seed)
        records = run_ber_sweep(cfg)
        path = outdir / f"sweep_{scheme.value}.csv"
        path.write_text(records_to_csv(records))
        eve = [r for r in records if r.role == "eavesdropper"]
        legit = [r for r in records if r.role == "legitimate"]
        print(f"{scheme.value}: wrote {path}")
        print(f"  legit BER  {' '.join(f'{r.ber:.2e}' for r in legit)}")
        print(f"  eve BER    {' '.join(f'{r.ber:.3f}' for r in eve)}")
        print(f"  eve leak   {' '.join(f'{r.leakage:.4f}' for r in eve)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
