import csv
import io
import random

import pytest

from kacfpga import bench
from kacfpga.errors import BadParameter
from kacfpga.pairing import BnGroup, MockGroup


def test_tenant_counts():
    assert bench.tenant_counts(100, 10) == [1, *range(10, 101, 10)]
    assert bench.tenant_counts(1, 10) == [1]
    assert bench.tenant_counts(25, 10) == [1, 10, 20, 25]


def test_byok_bytes():
    assert bench.byok_secure_bytes(1) == 16
    assert bench.byok_secure_bytes(100) == 1600


def test_storage_report_shape():
    report = bench.bench_storage(100, 10, group=BnGroup(), rng=random.Random(1))
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert list(rows[0]) == list(bench.CSV_HEADER)
    for row in rows:
        t = int(row["tenants"])
        assert int(row["byok_secure_bytes"]) == 16 * t
        float(row["enc_median_ms"])  # nan parses as float
    assert {int(r["kac_secure_bytes"]) for r in rows} == {65}
    assert rows[0]["tenants"] == "1" and rows[-1]["byok_secure_bytes"] == "1600"


def test_storage_errors():
    with pytest.raises(BadParameter):
        bench.bench_storage(0)
    with pytest.raises(BadParameter):
        bench.bench_storage(5, step=0)
    with pytest.raises(BadParameter):
        bench.bench_storage(5, trials=-1)


def test_single_trial_is_flagged():
    report = bench.bench_storage(3, 1, trials=1, group=MockGroup(101), rng=random.Random(2))
    assert all(row.encrypt.single_sample for row in report.rows)
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert {r["single_sample"] for r in rows} == {"1"}
    assert {r["trials"] for r in rows} == {"1"}


def test_latency_rejects_zero_trials():
    with pytest.raises(BadParameter):
        bench.bench_latency(0)


def test_latency_pairing_counts_mock():
    report = bench.bench_latency(3, group=MockGroup(101), rng=random.Random(3))
    assert report.encrypt_pairings == {2: 1, 8: 1, 32: 1}
    assert report.decrypt_pairings == {2: 2, 8: 2, 32: 2}


def test_latency_independent_of_n():
    report = bench.bench_latency(7, group=BnGroup(), rng=random.Random(4))
    assert report.encrypt_pairings == {2: 1, 8: 1, 32: 1}
    assert report.decrypt_pairings == {2: 2, 8: 2, 32: 2}
    assert report.ratio("decrypt") < 1.25
    assert report.ratio("encrypt") < 1.25


def test_compare_backends_rows():
    rows = bench.compare_backends(reps=1, names=["python"])
    assert {kernel for _, kernel, _ in rows} == {
        "g1_mul", "g2_mul", "miller_loop", "final_exponentiation", "pairing"
    }
    assert bench.backends_csv(rows).splitlines()[0] == "backend,kernel,median_ms"
