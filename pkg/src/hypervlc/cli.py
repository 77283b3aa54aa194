"""Command-line front end.

Subcommands: sweep-ber, sweep-leakage, send-image, sync-demo, bench.
CSV goes to --out or stdout; exit code 0 on success, 1 on validation
errors, 3 when a legitimate receiver fails to synchronize.
"""

from __future__ import annotations

import argparse
import sys

from . import harness, pgm
from .config import load_config


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key=value config file")
    sub.add_argument("--set", dest="overrides", action="append", default=[],
                     metavar="KEY=VALUE", help="override one config key")
    sub.add_argument("--seed", type=int, default=None, help="root rng seed")
    sub.add_argument("--out", help="output CSV path (default: stdout)")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypervlc",
        description="Hyperchaos-keyed constellation scrambling over DCO-OFDM VLC links")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("sweep-ber", help="BER vs SNR over the configured grid")
    _add_common(p)
    p.add_argument("--roles", default="legitimate,eavesdropper",
                   help="comma-separated roles to sweep")

    p = subs.add_parser("sweep-leakage", help="information leakage vs SNR")
    _add_common(p)
    p.add_argument("--roles", default="legitimate,eavesdropper",
                   help="comma-separated roles to sweep")

    p = subs.add_parser("send-image", help="transmit a PGM image through the link")
    _add_common(p)
    p.add_argument("--image", required=True, help="input PGM (P5, 8-bit)")
    p.add_argument("--recovered", required=True, help="output PGM path")
    p.add_argument("--snr", type=float, default=25.0,
                   help="SNR in dB (snr_sweep channel)")

    p = subs.add_parser("sync-demo", help="emit the synchronization error history")
    _add_common(p)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--tol", type=float, default=None)

    p = subs.add_parser("bench", help="per-frame runtime vs FFT size")
    _add_common(p)
    p.add_argument("--sizes", default="64,128,256,512,1024,2048,4096")
    p.add_argument("--symbols", type=int, default=1 << 16,
                   help="total symbols per measurement")
    p.add_argument("--repeats", type=int, default=3)
    return parser


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config, args.overrides, args.seed)
    roles = tuple(r.strip() for r in args.roles.split(",") if r.strip())
    records = harness.run_ber_sweep(cfg, roles=roles)
    _emit(harness.records_to_csv(records), args.out)
    return 0


def _cmd_send_image(args) -> int:
    cfg = load_config(args.config, args.overrides, args.seed)
    image = pgm.read_pgm(args.image)
    result = harness.transmit_image(image, cfg, snr_db=args.snr)
    pgm.write_pgm(args.recovered, result.recovered)
    rep = result.report
    header = ("snr_db,scheme,scrambler_mode,role,ber,leakage,"
              "ks_statistic,ks_p_value,frames,seed")
    fmt = harness._fmt
    row = ",".join([
        fmt(args.snr), rep.scheme, rep.scrambler_mode, rep.role,
        fmt(rep.ber), fmt(rep.leakage), fmt(result.ks.statistic),
        fmt(result.ks.p_value), str(rep.n_frames), str(rep.seed)])
    _emit(header + "\n" + row + "\n", args.out)
    if rep.sync_converged is False:
        print("error: synchronization did not converge within the preamble",
              file=sys.stderr)
        return 3
    return 0


def _cmd_sync_demo(args) -> int:
    cfg = load_config(args.config, args.overrides, args.seed)
    report = harness.sync_demo_records(cfg, tol=args.tol, max_iter=args.max_iter)
    _emit(harness.sync_history_csv(report), args.out)
    if not report.converged:
        print("error: synchronization did not converge", file=sys.stderr)
        return 3
    return 0


def _cmd_bench(args) -> int:
    sizes = tuple(int(s) for s in args.sizes.split(",") if s.strip())
    records = harness.bench_scaling(n_ffts=sizes, total_symbols=args.symbols,
                                    repeats=args.repeats)
    _emit(harness.bench_to_csv(records), args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "sweep-ber": _cmd_sweep,
        "sweep-leakage": _cmd_sweep,
        "send-image": _cmd_send_image,
        "sync-demo": _cmd_sync_demo,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
