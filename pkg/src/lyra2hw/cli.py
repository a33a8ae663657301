"""Command-line front end: ``lyra2hw hash|vectors|simulate|throughput``."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

from .hwsim import ARCHS, PIPELINE_STAGES, REPORTED, schedule_check, sim_iterative, sim_pipelined, throughput_model
from .lyra2 import lyra2_hash
from .vectors import check_vectors, make_records, parse_hex32, seeded_inputs, write_vectors

log = logging.getLogger("lyra2hw")

Hasher = Callable[[bytes], bytes]


def _freq(text: str) -> float:
    try:
        f = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not f > 0:
        raise argparse.ArgumentTypeError("frequency must be positive")
    return f


def _count(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("count must be at least 1")
    return n


def cmd_hash(args, out=None) -> int:
    out = out or sys.stdout
    try:
        pwd = parse_hex32(args.input_hex)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(lyra2_hash(pwd).hex(), file=out)
    return 0


def cmd_vectors(args, hasher: Hasher = lyra2_hash, out=None) -> int:
    out = out or sys.stdout
    if args.mode == "generate":
        if args.seed is None:
            print("error: vectors generate requires --seed", file=sys.stderr)
            return 2
        records = make_records(seeded_inputs(args.count, args.seed), hasher)
        write_vectors(args.file, records)
        print(f"wrote {len(records)} vectors to {args.file}", file=out)
        return 0

    if not Path(args.file).is_file():
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return 2
    try:
        n, bad = check_vectors(args.file, hasher)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if bad is not None:
        print(f"MISMATCH at line {bad} of {args.file}", file=out)
        return 1
    print(f"ok: {n} vectors match", file=out)
    return 0


def cmd_simulate(args, reference: Hasher = lyra2_hash, out=None) -> int:
    out = out or sys.stdout
    arch = args.arch_flag or args.arch or "iterative"
    count = args.count_flag or args.count or 1
    if arch == "pipelined":
        count = -(-count // PIPELINE_STAGES) * PIPELINE_STAGES
    pwds = seeded_inputs(count, args.seed)

    if arch == "iterative":
        results = [sim_iterative(p) for p in pwds]
    else:
        results = [sim_pipelined(pwds)]
    digests = [d for r in results for d in r.digests]
    verified = sum(d == reference(p) for d, p in zip(digests, pwds))
    violations = [v for r in results for v in schedule_check(r.trace, r.amap)]
    first = results[0]

    rows = [
        ("arch", arch),
        ("hashes", count),
        ("cycles_per_hash", first.cycle_count),
        ("latency_cycles", first.latency_cycles),
        ("concurrent_hashes", first.hashes_per_interval),
        ("steady_interval_cycles", first.steady_interval_cycles),
        ("total_cycles", sum(r.total_cycles for r in results)),
        ("max_reads_per_cycle", max(len(c.reads) for r in results for c in r.trace)),
        ("max_writes_per_cycle", max(len(c.writes) for r in results for c in r.trace)),
    ]
    rows += [(f"phase_cycles.{k}", v) for k, v in first.phase_cycles.items()]
    rows += [
        ("digests_verified", f"{verified}/{count}"),
        ("schedule_violations", len(violations)),
    ]
    for k, v in rows:
        print(f"{k}\t{v}", file=out)
    for v in violations[:10]:
        print(f"violation\tcycle={v.cycle}\t{v.kind}\t{v.detail}", file=out)
    if args.verbose:
        for p, d in zip(pwds, digests):
            print(f"digest\t{p.hex()}\t{d.hex()}", file=out)

    if args.trace:
        with open(args.trace, "w") as f:
            for r in results:
                for line in r.trace.lines():
                    f.write(line + "\n")
        log.info("trace written to %s", args.trace)
    if args.plot:
        from .plotting import plot_pipeline_occupancy, plot_port_usage

        paths = [plot_port_usage(first, args.plot)]
        if first.depth > 1:
            paths.append(plot_pipeline_occupancy(first, args.plot))
        for p in paths:
            print(f"figure\t{p}", file=out)

    return 0 if verified == count and not violations else 1


def cmd_throughput(args, out=None) -> int:
    out = out or sys.stdout
    print("arch\tfreq_mhz\tmhash_s", file=out)
    for arch in ARCHS:
        print(f"{arch}\t{args.freq_mhz:g}\t{throughput_model(args.freq_mhz, arch):.4f}", file=out)
    if args.paper:
        print("\nfpga\tfreq_mhz\tmodel_mhash_s\treported_mhash_s\trel_error", file=out)
        for name, (f, reported) in REPORTED.items():
            model = throughput_model(f, "pipelined")
            print(f"{name}\t{f:g}\t{model:.4f}\t{reported}\t{(model - reported) / reported:+.4%}", file=out)
    if args.plot:
        from .plotting import plot_throughput

        print(f"\nfigure\t{plot_throughput(args.plot, highlight=args.freq_mhz)}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lyra2hw", description="Lyra2REv2 Lyra2 hashing and FPGA core model")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hash", help="hash one 32-byte input given as 64 hex characters")
    p.add_argument("input_hex")
    p.set_defaults(func=cmd_hash)

    p = sub.add_parser("vectors", help="generate or check a JSON-lines vector file")
    p.add_argument("mode", choices=("generate", "check"))
    p.add_argument("--file", required=True)
    p.add_argument("--count", type=_count, default=100)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_vectors)

    p = sub.add_parser("simulate", help="run the cycle-accurate core model")
    p.add_argument("arch", nargs="?", choices=ARCHS)
    p.add_argument("count", nargs="?", type=_count)
    p.add_argument("--arch", dest="arch_flag", choices=ARCHS)
    p.add_argument("--count", dest="count_flag", type=_count)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write the per-cycle port trace here")
    p.add_argument("--plot", metavar="DIR", help="write figures and their data to DIR")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("throughput", help="hash rate at a given clock frequency")
    p.add_argument("freq_mhz", type=_freq)
    p.add_argument("--paper", action="store_true", help="also compare with the reported FPGA results")
    p.add_argument("--plot", metavar="DIR", help="write a throughput figure and its data to DIR")
    p.set_defaults(func=cmd_throughput)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
