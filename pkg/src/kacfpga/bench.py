"""Scalability benchmarks: secure-storage size and KAC latency versus
tenant count, plus a native-vs-python kernel comparison."""

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass, field

from kacfpga import backend, kac
from kacfpga.errors import BadParameter
from kacfpga.pairing import BnGroup
from kacfpga.provision import SESSION_KEY_BYTES, Vendor

BYOK_KEY_BYTES = 16

CSV_HEADER = (
    "tenants",
    "byok_secure_bytes",
    "kac_secure_bytes",
    "trials",
    "enc_median_ms",
    "enc_mean_ms",
    "dec_median_ms",
    "dec_mean_ms",
    "single_sample",
)


@dataclass
class LatencyStats:
    samples: list = field(default_factory=list)

    @property
    def count(self):
        return len(self.samples)

    @property
    def single_sample(self):
        return self.count == 1

    @property
    def median_ms(self):
        return 1e3 * statistics.median(self.samples) if self.samples else float("nan")

    @property
    def mean_ms(self):
        return 1e3 * statistics.fmean(self.samples) if self.samples else float("nan")


@dataclass
class BenchRow:
    tenants: int
    byok_secure_bytes: int
    kac_secure_bytes: int
    encrypt: LatencyStats = field(default_factory=LatencyStats)
    decrypt: LatencyStats = field(default_factory=LatencyStats)


@dataclass
class BenchReport:
    rows: list

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow(
                [
                    row.tenants,
                    row.byok_secure_bytes,
                    row.kac_secure_bytes,
                    row.encrypt.count,
                    f"{row.encrypt.median_ms:.3f}",
                    f"{row.encrypt.mean_ms:.3f}",
                    f"{row.decrypt.median_ms:.3f}",
                    f"{row.decrypt.mean_ms:.3f}",
                    int(row.encrypt.single_sample),
                ]
            )
        return buf.getvalue()


def tenant_counts(max_tenants, step):
    counts = {1, max_tenants}
    counts.update(range(step, max_tenants + 1, step))
    return sorted(counts)


def byok_secure_bytes(tenants):
    """Plain BYOK keeps one AES-128 key per partition in secure storage."""
    return BYOK_KEY_BYTES * tenants


def _time(fn):
    start = time.perf_counter()
    result = fn()
    return time.perf_counter() - start, result


def _measure(vendor, fpga, trials, rng):
    enc, dec = LatencyStats(), LatencyStats()
    bundle = fpga._bundle()
    for t in range(trials):
        index = fpga.index_map[fpga.partitions[t % len(fpga.partitions)]]
        key = rng.randbytes(SESSION_KEY_BYTES)
        dt, ct = _time(lambda: kac.encrypt(vendor.mpk, index, key, rng))
        enc.samples.append(dt)
        dt, recovered = _time(lambda: kac.decrypt(bundle, ct))
        dec.samples.append(dt)
        assert recovered == key
    return enc, dec


def bench_storage(max_tenants, step=10, trials=0, group=None, rng=None):
    """Secure-store bytes per FPGA for BYOK alone vs BYOK+KAC.

    With ``trials > 0`` each row also carries KAC encrypt/decrypt latency.
    """
    if max_tenants < 1:
        raise BadParameter("max_tenants must be at least 1")
    if step < 1:
        raise BadParameter("step must be at least 1")
    if trials < 0:
        raise BadParameter("trials must be non-negative")
    group = group if group is not None else BnGroup()
    rng = rng if rng is not None else random.Random()
    keypair = kac.setup(group, max_tenants, rng)
    rows = []
    for t in tenant_counts(max_tenants, step):
        vendor = Vendor(keypair.mpk, keypair.msk)
        fpga = vendor.provision_fpga(t, rng)
        row = BenchRow(t, byok_secure_bytes(t), fpga.secure_store_bytes())
        if trials:
            row.encrypt, row.decrypt = _measure(vendor, fpga, trials, rng)
        rows.append(row)
    return BenchReport(rows)


@dataclass
class LatencyReport:
    sizes: tuple
    encrypt: dict
    decrypt: dict
    encrypt_pairings: dict
    decrypt_pairings: dict

    def ratio(self, which="decrypt"):
        stats = getattr(self, which)
        medians = [stats[n].median_ms for n in self.sizes]
        return max(medians) / min(medians)


def bench_latency(trials, sizes=(2, 8, 32), group=None, rng=None):
    """KAC encrypt/decrypt wall time and pairing counts for several n."""
    if trials < 1:
        raise BadParameter("trials must be at least 1")
    group = group if group is not None else BnGroup()
    rng = rng if rng is not None else random.Random()
    enc, dec, enc_pairs, dec_pairs = {}, {}, {}, {}
    for n in sizes:
        keypair = kac.setup(group, n, rng)
        vendor = Vendor(keypair.mpk, keypair.msk)
        fpga = vendor.provision_fpga(n, rng)
        bundle = fpga._bundle()
        enc[n], dec[n] = LatencyStats(), LatencyStats()
        enc_counts, dec_counts = set(), set()
        for t in range(trials):
            index = fpga.index_map[fpga.partitions[t % n]]
            key = rng.randbytes(SESSION_KEY_BYTES)
            before = group.counter.count
            dt, ct = _time(lambda: kac.encrypt(keypair.mpk, index, key, rng))
            enc_counts.add(group.counter.count - before)
            enc[n].samples.append(dt)
            before = group.counter.count
            dt, _ = _time(lambda: kac.decrypt(bundle, ct))
            dec_counts.add(group.counter.count - before)
            dec[n].samples.append(dt)
        enc_pairs[n] = enc_counts.pop() if len(enc_counts) == 1 else sorted(enc_counts)
        dec_pairs[n] = dec_counts.pop() if len(dec_counts) == 1 else sorted(dec_counts)
    return LatencyReport(tuple(sizes), enc, dec, enc_pairs, dec_pairs)


def compare_backends(reps=5, names=None):
    """Median seconds per kernel call for each available backend."""
    from kacfpga.curve import G1Point, G2Point, scalar_mul
    from kacfpga.pairing import final_exponentiation, miller_loop, pair
    from kacfpga.params import Q

    names = names or backend.available()
    g1, g2 = G1Point.generator(), G2Point.generator()
    k = Q - 12345
    rows = []
    for name in names:
        with backend.using(name):
            f = miller_loop(g1, g2).value
            kernels = {
                "g1_mul": lambda: scalar_mul(k, g1),
                "g2_mul": lambda: scalar_mul(k, g2),
                "miller_loop": lambda: miller_loop(g1, g2),
                "final_exponentiation": lambda: final_exponentiation(f),
                "pairing": lambda: pair(g1, g2),
            }
            for kernel, fn in kernels.items():
                samples = [_time(fn)[0] for _ in range(reps)]
                rows.append((name, kernel, statistics.median(samples)))
    return rows


def backends_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("backend", "kernel", "median_ms"))
    for name, kernel, seconds in rows:
        writer.writerow((name, kernel, f"{1e3 * seconds:.3f}"))
    return buf.getvalue()
