"""Command-line entry point: gen, encode, decode, model, bench, sim, report."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from . import codec
from . import collision
from . import sim as sim_mod
from .core import (
    IdScheme,
    MonotonicState,
    RandomOverflow,
    SeededEntropy,
    SystemClock,
    SystemEntropy,
    generate_ulid,
    generate_uuidv4,
    generate_uuidv7,
    next_monotonic_ulid,
)

__all__ = ["main"]


def _scheme_arg(text: str) -> IdScheme:
    try:
        return IdScheme.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _parse_uid_value(text: str) -> int:
    t = text.strip()
    if t.lower().startswith("0x"):
        value = int(t, 16)
    elif len(t) == 32 and all(c in "0123456789abcdefABCDEF" for c in t):
        value = int(t, 16)
    else:
        value = int(t, 10)
    if not 0 <= value < (1 << 128):
        raise ValueError(f"value outside [0, 2^128 - 1]: {text}")
    return value


def _make_rng(seed):
    return SeededEntropy(seed) if seed is not None else SystemEntropy()


def _encoder_for(scheme: IdScheme):
    return codec.ulid_encode if scheme is IdScheme.ULID else codec.uuid_format


def _cmd_gen(args) -> int:
    rng = _make_rng(args.seed)
    clock = SystemClock()
    encode = _encoder_for(args.scheme)
    state = MonotonicState()
    try:
        for _ in range(args.count):
            if args.scheme is IdScheme.ULID:
                value = (
                    next_monotonic_ulid(state, clock, rng)
                    if args.monotonic
                    else generate_ulid(clock, rng)
                )
            elif args.scheme is IdScheme.UUID_V7:
                value = generate_uuidv7(clock, rng)
            else:
                value = generate_uuidv4(rng)
            print(encode(value))
    except RandomOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_encode(args) -> int:
    encode = codec.ulid_encode if args.to == "ulid" else codec.uuid_format
    try:
        for text in args.values:
            print(encode(_parse_uid_value(text)))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_decode(args) -> int:
    status = 0
    for text in args.values:
        try:
            if len(text) == codec.ULID_TEXT_LENGTH:
                value = codec.ulid_decode(text)
            elif len(text) == codec.UUID_TEXT_LENGTH:
                value = codec.uuid_parse(text)
            else:
                raise codec.InvalidLength(
                    f"{text!r} is neither 26 (ULID) nor 36 (UUID) characters"
                )
            print(f"{value:032x}")
        except codec.CodecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = 1
    return status


def _cmd_model(args, parser) -> int:
    modes = sum([args.table, args.solve_p is not None, args.count is not None])
    if modes != 1:
        parser.error("choose exactly one mode: --table, --bits B --count N, or --solve-p P --bits B")
    if args.table:
        table = collision.risk_table()
        if args.csv:
            sys.stdout.write(table.render_csv())
            for note in table.notes:
                print(f"note: {note}", file=sys.stderr)
        else:
            sys.stdout.write(table.render_text())
        return 0
    if args.bits is None:
        parser.error("--bits is required with --count and --solve-p")
    if args.solve_p is not None:
        if not 0 < args.solve_p < 1:
            parser.error("--solve-p must be strictly between 0 and 1")
        n = collision.count_for_probability(args.bits, args.solve_p)
        print(f"{n:.4e}")
        if args.solve_p == 0.5 and args.bits in collision.FIFTY_PERCENT_THRESHOLD_NOTES:
            print(f"note: {collision.FIFTY_PERCENT_THRESHOLD_NOTES[args.bits]}")
        return 0
    p = collision.collision_prob(collision.CollisionQuery(args.bits, args.count))
    print(p.sci(args.digits))
    return 0


def _cmd_bench(args) -> int:
    cfg = bench_mod.BenchConfig(
        scheme=args.scheme,
        sample_interval=args.interval_ms / 1000.0,
        total_samples=args.samples,
        ids_per_sample=args.ids_per_sample,
        bytes_per_char=args.bytes_per_char,
    )
    timer = bench_mod.SimulatedTimer() if args.virtual_time else None
    sleep = (lambda _s: None) if args.virtual_time else None
    try:
        samples = bench_mod.run_generation_bench(
            cfg, rng=_make_rng(args.seed), timer_ns=timer, sleep=sleep
        )
        out = args.out or bench_mod.metrics_filename(args.scheme)
        bench_mod.write_metrics_csv(samples, out)
    except (bench_mod.TimerResolutionTooCoarse, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    summary = bench_mod.summarize(samples)
    d, b = summary.duration_micros, summary.bandwidth_mbps
    print(f"wrote {len(samples)} samples to {out}")
    print(f"durationMicros  mean {d.mean:.6g}  median {d.median:.6g}  p95 {d.p95:.6g}")
    print(f"bandwidthMbps   mean {b.mean:.6g}")
    return 0


def _cmd_sim(args) -> int:
    cfg = sim_mod.SimConfig(
        scheme=args.scheme,
        producers=args.producers,
        events_per_producer=args.events,
        partitions=args.partitions,
        consumers=args.consumers,
        produce_interval=args.produce_interval_ms / 1000.0,
        seed=args.seed,
        deterministic=args.deterministic,
        persist_path=args.persist,
    )
    report = sim_mod.run_simulation(cfg)
    sys.stdout.write(report.render_csv() if args.csv else report.render_text())
    failed = report.duplicate_count > 0 or (
        report.ordering_checked and report.ordering_violations > 0
    )
    return 1 if failed else 0


def _infer_scheme(path: str) -> IdScheme | None:
    stem = Path(path).stem
    if stem.startswith("metrics_"):
        try:
            return IdScheme.parse(stem[len("metrics_"):])
        except ValueError:
            return None
    return None


def _cmd_report(args) -> int:
    rows = []
    try:
        for path in args.inputs:
            samples = bench_mod.read_metrics_csv(path)
            summary = bench_mod.summarize(samples)
            scheme = _infer_scheme(path)
            size = bench_mod.serialized_size(scheme, args.bytes_per_char) if scheme else None
            label = scheme.cli_name if scheme else Path(path).stem
            rows.append((label, summary.duration_micros.mean, summary.bandwidth_mbps.mean, size))
    except (bench_mod.MalformedMetrics, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    print(f"{'scheme':<12}{'mean durationMicros':>22}{'mean bandwidthMbps':>22}{'bytes/id':>10}")
    for label, dur, bw, size in rows:
        size_text = str(size) if size is not None else "-"
        print(f"{label:<12}{dur:>22.6f}{bw:>22.6f}{size_text:>10}")

    any_size_gap = False
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            a, b = rows[i], rows[j]
            speedup = b[1] / a[1]
            line = f"{a[0]} vs {b[0]}: generation speedup {speedup:.4g}x"
            if a[3] is not None and b[3] is not None:
                reduction = (b[3] - a[3]) / b[3] * 100.0
                line += f", size reduction {reduction:.1f}%"
                if reduction != 0:
                    any_size_gap = True
            print(line)
    if any_size_gap:
        print(f"note: {bench_mod.HEADLINE_RATIO_NOTE}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uidlab",
        description="Identifier generation, codecs, collision modeling, benchmarks and pipeline simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate identifiers, one per line")
    p.add_argument("--scheme", type=_scheme_arg, required=True, help="ulid | uuidv4 | uuidv7")
    p.add_argument("--count", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=None, help="deterministic output for a fixed seed")
    p.add_argument("--monotonic", action="store_true", help="ULID only: strictly increasing within one process")

    p = sub.add_parser("encode", help="encode 128-bit values to canonical strings")
    p.add_argument("--to", choices=("ulid", "uuid"), required=True)
    p.add_argument("values", nargs="+", help="decimal, 0x-prefixed, or 32-digit hex values")

    p = sub.add_parser("decode", help="decode ULID/UUID strings to 32-digit hex")
    p.add_argument("values", nargs="+")

    p = sub.add_parser("model", help="birthday-bound collision probabilities")
    p.add_argument("--table", action="store_true", help="risk table at 1e3/1e6/1e9 ids per window")
    p.add_argument("--csv", action="store_true", help="CSV output for --table")
    p.add_argument("--bits", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--solve-p", type=float, default=None, dest="solve_p")
    p.add_argument("--digits", type=int, default=2, help="significant digits for single values")

    p = sub.add_parser("bench", help="measure generation speed and bandwidth")
    p.add_argument("--scheme", type=_scheme_arg, required=True)
    p.add_argument("--samples", type=_positive_int, default=2420)
    p.add_argument("--interval-ms", type=float, default=500.0)
    p.add_argument("--ids-per-sample", type=_positive_int, default=1000)
    p.add_argument("--bytes-per-char", type=int, choices=(1, 2), default=2)
    p.add_argument("--out", default=None, help="default: metrics_<SCHEME>.csv")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--virtual-time", action="store_true", help="deterministic timer, no sleeping")

    p = sub.add_parser("sim", help="producer/broker/consumer pipeline run")
    p.add_argument("--scheme", type=_scheme_arg, required=True)
    p.add_argument("--producers", type=_positive_int, default=4)
    p.add_argument("--events", type=_positive_int, default=1000, help="events per producer")
    p.add_argument("--partitions", type=_positive_int, default=4)
    p.add_argument("--consumers", type=_positive_int, default=4)
    p.add_argument("--produce-interval-ms", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true", help="single-threaded virtual-time replay")
    p.add_argument("--persist", default=None, help="append stored ids to this file, one per line")
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("report", help="combine metrics CSVs into a comparison table")
    p.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    p.add_argument("--bytes-per-char", type=int, choices=(1, 2), default=2)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        if args.monotonic and args.scheme is not IdScheme.ULID:
            parser.error("--monotonic requires --scheme ulid")
        return _cmd_gen(args)
    if args.command == "encode":
        return _cmd_encode(args)
    if args.command == "decode":
        return _cmd_decode(args)
    if args.command == "model":
        return _cmd_model(args, parser)
    if args.command == "bench":
        return _cmd_bench(args)
    if args.command == "sim":
        return _cmd_sim(args)
    return _cmd_report(args)


if __name__ == "__main__":
    sys.exit(main())
