import random

import pytest

from kacfpga import keystore
from kacfpga.errors import BadMagic, CorruptPoint, MalformedCiphertext, StoreError, VersionMismatch
from kacfpga.pairing import MockGroup
from kacfpga.provision import tenant_encrypt, vendor_init


@pytest.fixture(params=["bn", "mock"])
def populated(request, tmp_path):
    group = MockGroup(101) if request.param == "mock" else None
    store = keystore.Store(tmp_path / "store")
    rng = random.Random(6)
    vendor = vendor_init(4, rng, store, group)
    fpga = vendor.provision_fpga(3, rng)
    return store, vendor, fpga


def test_write_read_equal_state(populated):
    store, vendor, fpga = populated
    assert keystore.encode_mpk(store.load_mpk()) == keystore.encode_mpk(vendor.mpk)
    assert store.load_msk() == vendor._msk
    assert store.load_registry() == vendor.registry
    again = store.load_fpga(fpga.fpga_id)
    assert keystore.encode_fpga(again) == keystore.encode_fpga(fpga)
    assert again.partitions == fpga.partitions and again.tamper_proof


def test_file_names_and_header(populated):
    store, _, fpga = populated
    names = sorted(p.name for p in store.path.iterdir())
    assert names == sorted(["mpk.bin", "msk.bin", "registry.bin", f"fpga-{fpga.fpga_id:016x}.bin"])
    data = store.mpk_path.read_bytes()
    assert data[:4] == b"KACF" and data[4:6] == (1).to_bytes(2, "big")


def test_bitstream_roundtrip(populated):
    _, vendor, fpga = populated
    eb = tenant_encrypt(vendor.mpk, vendor.registry, fpga.partitions[0], b"abc", random.Random(1))
    data = keystore.encode_bitstream(eb, vendor.group)
    group, again = keystore.decode_bitstream(data)
    assert again == eb and group.code == vendor.group.code


def test_truncated_files(populated):
    store, _, fpga = populated
    decoders = {
        store.mpk_path: keystore.decode_mpk,
        store.registry_path: keystore.decode_registry,
        store.fpga_path(fpga.fpga_id): keystore.decode_fpga,
        store.msk_path: keystore.decode_msk,
    }
    for path, decode in decoders.items():
        data = path.read_bytes()
        for cut in (0, 3, 8, len(data) // 2, len(data) - 1):
            with pytest.raises((BadMagic, CorruptPoint)):
                decode(data[:cut])


def test_bad_magic_version_and_kind(populated):
    store, _, _ = populated
    data = store.mpk_path.read_bytes()
    with pytest.raises(BadMagic):
        keystore.decode_mpk(b"XXXX" + data[4:])
    with pytest.raises(VersionMismatch):
        keystore.decode_mpk(data[:4] + (2).to_bytes(2, "big") + data[6:])
    with pytest.raises(BadMagic):
        keystore.decode_registry(data)


def test_corrupt_point_detected(populated):
    store, vendor, _ = populated
    data = bytearray(store.mpk_path.read_bytes())
    first = 7 + 7 + 4
    if vendor.group.code == 1:
        data[first + 64] ^= 0x01  # last byte of the first G1 point's y
    else:
        data[first] = 0xFF  # exponent above the mock order
    with pytest.raises(CorruptPoint):
        keystore.decode_mpk(bytes(data))


def test_truncated_bitstream(populated):
    _, vendor, fpga = populated
    eb = tenant_encrypt(vendor.mpk, vendor.registry, fpga.partitions[0], b"abc", random.Random(1))
    data = keystore.encode_bitstream(eb, vendor.group)
    with pytest.raises((BadMagic, MalformedCiphertext)):
        keystore.decode_bitstream(data[:30])


def test_missing_files(tmp_path):
    store = keystore.Store(tmp_path)
    with pytest.raises(StoreError):
        store.load_mpk()
    with pytest.raises(StoreError):
        store.load_fpga(1)
