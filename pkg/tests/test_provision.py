import inspect
import random
import threading

import pytest

from kacfpga import keystore, provision
from kacfpga.errors import (
    BadParameter,
    ForeignPartition,
    MalformedCiphertext,
    MissingKey,
    StoreExists,
    TagMismatch,
    TooManyPartitions,
    UnknownPartition,
)
from kacfpga.pairing import BnGroup, MockGroup
from kacfpga.provision import (
    NONCE_BYTES,
    TAG_BYTES,
    EncryptedBitstream,
    Vendor,
    load_bitstream,
    open_session,
    provision_fpga,
    tenant_encrypt,
    vendor_init,
)


@pytest.fixture(scope="module")
def deployment():
    rng = random.Random(404)
    vendor = vendor_init(8, rng)
    fpga_a = provision_fpga(vendor, 3, rng)
    fpga_b = provision_fpga(vendor, 2, rng)
    return vendor, fpga_a, fpga_b


def test_vendor_init_writes_store(tmp_path):
    store = keystore.Store(tmp_path / "s")
    vendor = vendor_init(4, random.Random(1), store)
    data = store.mpk_path.read_bytes()
    # KACF header, group header, n, then 2n+1 G1 points and 2n+1 G2 points
    points = 2 * (2 * 4) + 2
    assert len(data) == 7 + 7 + 4 + (points // 2) * 65 + (points // 2) * 129
    assert store.load_mpk().to_bytes() == vendor.mpk.to_bytes()
    assert store.load_mpk().point_count() == points
    assert store.msk_path.stat().st_mode & 0o077 == 0
    with pytest.raises(StoreExists):
        vendor_init(4, random.Random(1), store)


def test_single_partition_has_identity_b(deployment):
    vendor, _, _ = deployment
    fresh = Vendor(vendor.mpk, vendor._msk)
    fpga = fresh.provision_fpga(1, random.Random(3))
    (b,) = fpga.public_store.b.values()
    assert b == vendor.group.g1_identity()


def test_secure_store_is_one_element(deployment):
    vendor, _, _ = deployment
    sizes = set()
    for k in (1, 4, 8):
        fpga = Vendor(vendor.mpk, vendor._msk).provision_fpga(k, random.Random(k))
        sizes.add(fpga.secure_store_bytes())
    assert sizes == {65}


def test_partition_ids_unique_across_deployment():
    rng = random.Random(77)
    vendor = vendor_init(800, rng, group=MockGroup(101))
    fpgas = [vendor.provision_fpga(8, rng) for _ in range(100)]
    pids = [pid for f in fpgas for pid in f.partitions]
    indices = [f.index_map[pid] for f in fpgas for pid in f.partitions]
    assert len(set(pids)) == len(pids) == 800
    assert len(set(indices)) == 800
    assert len({f.fpga_id for f in fpgas}) == 100
    assert all(len(pid) == 16 for pid in pids)
    with pytest.raises(TooManyPartitions):
        vendor.provision_fpga(1, rng)


def test_provision_argument_errors(deployment):
    vendor, _, _ = deployment
    with pytest.raises(BadParameter):
        vendor.provision_fpga(0)
    with pytest.raises(TooManyPartitions):
        vendor.provision_fpga(9)


@pytest.mark.parametrize("size", [0, 1, 4096, 1 << 20])
def test_roundtrip_every_partition(deployment, size):
    vendor, fpga_a, fpga_b = deployment
    rng = random.Random(size)
    for fpga in (fpga_a, fpga_b):
        for pid in fpga.partitions:
            bitstream = rng.randbytes(size)
            eb = tenant_encrypt(vendor.mpk, vendor.registry, pid, bitstream, rng)
            assert len(eb.body) == size
            assert load_bitstream(fpga, eb) == bitstream


def test_empty_bitstream_is_nonce_and_tag(deployment):
    vendor, fpga, _ = deployment
    eb = tenant_encrypt(vendor.mpk, vendor.registry, fpga.partitions[0], b"", random.Random(0))
    assert len(eb.c1) == NONCE_BYTES + TAG_BYTES
    assert fpga.load_bitstream(eb) == b""


def test_encryption_is_randomized(deployment):
    vendor, fpga, _ = deployment
    rng = random.Random(5)
    pid = fpga.partitions[0]
    one = tenant_encrypt(vendor.mpk, vendor.registry, pid, b"same", rng)
    two = tenant_encrypt(vendor.mpk, vendor.registry, pid, b"same", rng)
    assert one.c1 != two.c1
    assert one.c2 != two.c2


def test_unknown_partition(deployment):
    vendor, _, _ = deployment
    with pytest.raises(UnknownPartition):
        tenant_encrypt(vendor.mpk, vendor.registry, bytes(16), b"x")


def test_kac_once_per_session(deployment):
    vendor, fpga, _ = deployment
    pid = fpga.partitions[1]
    session = open_session(vendor.mpk, vendor.registry, pid, random.Random(8))
    before = fpga.kac_invocations
    first, second = session.encrypt(b"one"), session.encrypt(b"two")
    assert fpga.load_bitstream(first) == b"one"
    assert fpga.load_bitstream(second) == b"two"
    assert fpga.kac_invocations - before == 1
    assert fpga.session_invocations(first) == 1
    fpga.close_session(pid)
    assert fpga.load_bitstream(first) == b"one"
    assert fpga.kac_invocations - before == 2


def test_tampered_ciphertext_fails_and_is_not_cached(deployment):
    vendor, fpga, _ = deployment
    pid = fpga.partitions[2]
    eb = tenant_encrypt(vendor.mpk, vendor.registry, pid, b"bitstream", random.Random(9))
    flipped = bytearray(eb.c1)
    flipped[NONCE_BYTES] ^= 0x80
    bad = EncryptedBitstream(pid, bytes(flipped), eb.c2)
    with pytest.raises(TagMismatch):
        fpga.load_bitstream(bad)
    assert fpga.session_invocations(bad) == 1
    with pytest.raises(TagMismatch):
        fpga.load_bitstream(bad)
    assert fpga.session_invocations(bad) == 2  # failed sessions never populate the cache
    truncated = EncryptedBitstream(pid, eb.c1[:10], eb.c2)
    with pytest.raises(MalformedCiphertext):
        fpga.load_bitstream(truncated)


def test_wrong_partition_binding(deployment):
    vendor, fpga, _ = deployment
    p0, p1 = fpga.partitions[:2]
    eb = tenant_encrypt(vendor.mpk, vendor.registry, p0, b"x", random.Random(2))
    with pytest.raises(MalformedCiphertext):
        fpga.load_bitstream(EncryptedBitstream(p1, eb.c1, eb.c2))


def test_cross_fpga_exclusion(deployment):
    vendor, fpga_a, fpga_b = deployment
    rng = random.Random(12)
    for pid in fpga_a.partitions:
        eb = tenant_encrypt(vendor.mpk, vendor.registry, pid, b"ip core", rng)
        with pytest.raises(ForeignPartition):
            fpga_b.load_bitstream(eb)
        with pytest.raises(TagMismatch):
            fpga_b.force_load(eb, vendor.mpk)


def test_concurrent_loads_distinct_partitions(deployment):
    vendor, fpga, _ = deployment
    rng = random.Random(13)
    jobs = []
    for pid in fpga.partitions:
        data = rng.randbytes(2048)
        jobs.append((data, tenant_encrypt(vendor.mpk, vendor.registry, pid, data, rng)))
    before = fpga.kac_invocations
    results = [None] * (2 * len(jobs))

    def worker(slot, eb):
        results[slot] = fpga.load_bitstream(eb)

    threads = [
        threading.Thread(target=worker, args=(2 * k + rep, eb))
        for k, (_, eb) in enumerate(jobs)
        for rep in range(2)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [data for data, _ in jobs for _ in range(2)]
    assert fpga.kac_invocations - before == len(jobs)


def test_role_isolation_api_surface(deployment):
    vendor, fpga, _ = deployment
    secret_names = {"msk", "_msk", "sk", "secure_key", "_secure"}
    for fn in (tenant_encrypt, open_session, provision.TenantSession.encrypt, load_bitstream):
        assert not secret_names & set(inspect.signature(fn).parameters)
    # nothing public on the device, registry or public store exposes sk_S or msk
    for obj in (fpga, fpga.public_store, vendor.registry, vendor.mpk):
        for name in dir(obj):
            if name.startswith("_"):
                continue
            value = getattr(obj, name)
            if callable(value):
                continue
            assert value is not fpga._secure, name
            assert value != vendor._msk, name
    assert not hasattr(vendor, "msk")
    assert fpga._secure not in fpga.public_store.b.values()


def test_tenant_works_without_msk(tmp_path):
    store = keystore.Store(tmp_path / "s")
    rng = random.Random(14)
    vendor = vendor_init(3, rng, store)
    fpga = vendor.provision_fpga(2, rng)
    store.msk_path.unlink()
    public = store.load_vendor()
    assert not public.can_provision
    with pytest.raises(MissingKey):
        public.provision_fpga(1, rng)
    with pytest.raises(MissingKey):
        store.load_msk()
    pid = fpga.partitions[0]
    eb = tenant_encrypt(public.mpk, public.registry, pid, b"still works", rng)
    assert store.load_fpga(fpga.fpga_id).load_bitstream(eb) == b"still works"


def test_bn_is_the_default_group():
    vendor = vendor_init(1, random.Random(0))
    assert isinstance(vendor.group, BnGroup)
