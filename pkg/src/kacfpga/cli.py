"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 crypto failure, 3 I/O.
"""

import argparse
import random
import sys
from pathlib import Path

from kacfpga import backend, bench, keystore, provision, selftest
from kacfpga.errors import KacfpgaError, UsageError
from kacfpga.pairing import group_by_name


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _hex_bytes(text):
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex string: {text!r}") from None


def _hex_int(text):
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex id: {text!r}") from None


def build_parser():
    parser = _Parser(prog="kacfpga", description="KAC-based multi-tenant FPGA provisioning")
    parser.add_argument("--store", default="kac-store", help="keystore directory")
    parser.add_argument("--seed", type=int, help="deterministic RNG seed")
    parser.add_argument("--backend", choices=backend.available(), help="arithmetic kernels")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("vendor-setup", help="generate and publish mpk, keep msk")
    p.add_argument("--n", type=int, required=True, help="identity space size")
    p.add_argument("--group", default="bn", choices=["bn", "mock"])

    p = sub.add_parser("provision", help="provision a virtual FPGA")
    p.add_argument("--partitions", type=int, required=True)

    p = sub.add_parser("encrypt", help="tenant-side hybrid bitstream encryption")
    p.add_argument("--partition", type=_hex_bytes, required=True)
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out", dest="outfile", type=Path, required=True)

    p = sub.add_parser("load", help="decrypt a bitstream on a virtual FPGA")
    p.add_argument("--fpga", type=_hex_int, required=True)
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out", dest="outfile", type=Path, required=True)

    p = sub.add_parser("bench", help="secure-storage and latency scalability report")
    p.add_argument("--max-tenants", type=int, default=100)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--step", type=int, default=10)
    p.add_argument("--group", default="bn", choices=["bn", "mock"])
    p.add_argument("--latency", action="store_true", help="n in {2,8,32} latency check instead")
    p.add_argument("--compare-backends", action="store_true", help="kernel timings per backend")
    p.add_argument("--out", dest="outfile", type=Path)

    sub.add_parser("selftest", help="mock-group KAC vector suite")
    return parser


def _emit(text, outfile):
    if outfile is None:
        sys.stdout.write(text)
    else:
        outfile.write_text(text)


def _cmd_vendor_setup(args, rng):
    store = keystore.Store(args.store)
    vendor = provision.vendor_init(args.n, rng, store, group_by_name(args.group))
    print(f"store {store.path}: n={vendor.mpk.n} group={vendor.group.name}")
    return 0


def _cmd_provision(args, rng):
    store = keystore.Store(args.store)
    fpga = store.load_vendor().provision_fpga(args.partitions, rng)
    print(f"fpga {fpga.fpga_id:016x}")
    for pid in fpga.partitions:
        print(f"partition {pid.hex()} index {fpga.index_map[pid]}")
    return 0


def _cmd_encrypt(args, rng):
    store = keystore.Store(args.store)
    mpk = store.load_mpk()
    registry = store.load_registry()
    eb = provision.tenant_encrypt(mpk, registry, args.partition, args.infile.read_bytes(), rng)
    args.outfile.write_bytes(keystore.encode_bitstream(eb, mpk.group))
    return 0


def _cmd_load(args, rng):
    store = keystore.Store(args.store)
    fpga = store.load_fpga(args.fpga)
    _, eb = keystore.decode_bitstream(args.infile.read_bytes())
    args.outfile.write_bytes(fpga.load_bitstream(eb))
    return 0


def _cmd_bench(args, rng):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.compare_backends:
        _emit(bench.backends_csv(bench.compare_backends(args.trials)), args.outfile)
        return 0
    group = group_by_name(args.group)
    if args.latency:
        report = bench.bench_latency(args.trials, group=group, rng=rng)
        lines = ["n,trials,enc_median_ms,dec_median_ms,enc_pairings,dec_pairings"]
        for n in report.sizes:
            lines.append(
                f"{n},{report.encrypt[n].count},{report.encrypt[n].median_ms:.3f},"
                f"{report.decrypt[n].median_ms:.3f},{report.encrypt_pairings[n]},"
                f"{report.decrypt_pairings[n]}"
            )
        _emit("\n".join(lines) + "\n", args.outfile)
        return 0
    report = bench.bench_storage(args.max_tenants, args.step, args.trials, group, rng)
    _emit(report.to_csv(), args.outfile)
    return 0


def _cmd_selftest(args, rng):
    failed = 0
    for name, ok in selftest.run():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        failed += not ok
    return 0 if not failed else 2


COMMANDS = {
    "vendor-setup": _cmd_vendor_setup,
    "provision": _cmd_provision,
    "encrypt": _cmd_encrypt,
    "load": _cmd_load,
    "bench": _cmd_bench,
    "selftest": _cmd_selftest,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.backend:
            backend.select(args.backend)
        rng = random.Random(args.seed) if args.seed is not None else random.SystemRandom()
        return COMMANDS[args.command](args, rng)
    except KacfpgaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
