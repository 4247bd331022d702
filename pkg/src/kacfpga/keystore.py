"""Versioned binary files for vendor, registry, device and bitstream state.

Every file starts with ``b"KACF" || version:u16 || kind:u8``; all integers
are big-endian and points use the frozen curve encodings. Loading
re-validates every point.
"""

import os
import struct
from pathlib import Path

from kacfpga import kac
from kacfpga.errors import (
    BadEncoding,
    BadMagic,
    CorruptPoint,
    MalformedCiphertext,
    MissingKey,
    StoreError,
    StoreExists,
    VersionMismatch,
)
from kacfpga.provision import (
    PARTITION_ID_BYTES,
    EncryptedBitstream,
    PublicStore,
    Registry,
    VirtualFpga,
)

MAGIC = b"KACF"
VERSION = 1

KIND_MPK = 1
KIND_MSK = 2
KIND_REGISTRY = 3
KIND_FPGA = 4
KIND_BITSTREAM = 5

_HEADER = struct.Struct(">4sHB")


def _wrap(kind, payload):
    return _HEADER.pack(MAGIC, VERSION, kind) + payload


def _unwrap(data, kind):
    if len(data) < _HEADER.size:
        raise BadMagic("file too short for a KACF header")
    magic, version, found = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise VersionMismatch(f"file version {version}, expected {VERSION}")
    if found != kind:
        raise BadMagic(f"file kind {found}, expected {kind}")
    return data[_HEADER.size :]


def _group_bytes(group):
    return kac._group_header(group)


def _read_group(data, offset):
    try:
        return kac._read_group_header(data, offset)
    except BadEncoding as exc:
        raise CorruptPoint(str(exc)) from exc


def encode_mpk(mpk):
    return _wrap(KIND_MPK, mpk.to_bytes())


def decode_mpk(data):
    payload = _unwrap(data, KIND_MPK)
    try:
        return kac.MasterPublicKey.from_bytes(payload)
    except BadEncoding as exc:
        raise CorruptPoint(str(exc)) from exc


def encode_msk(msk):
    return _wrap(KIND_MSK, msk.to_bytes(32, "big"))


def decode_msk(data):
    payload = _unwrap(data, KIND_MSK)
    if len(payload) != 32:
        raise CorruptPoint("master secret key must be 32 bytes")
    return int.from_bytes(payload, "big")


_REG_ENTRY = struct.Struct(f">{PARTITION_ID_BYTES}sQI")


def encode_registry(registry):
    parts = [struct.pack(">I", len(registry.entries))]
    for pid, (fpga_id, index) in sorted(registry.entries.items()):
        parts.append(_REG_ENTRY.pack(pid, fpga_id, index))
    return _wrap(KIND_REGISTRY, b"".join(parts))


def decode_registry(data):
    payload = _unwrap(data, KIND_REGISTRY)
    try:
        (count,) = struct.unpack_from(">I", payload)
        if len(payload) != 4 + count * _REG_ENTRY.size:
            raise CorruptPoint("registry length does not match entry count")
        entries = {}
        for k in range(count):
            pid, fpga_id, index = _REG_ENTRY.unpack_from(payload, 4 + k * _REG_ENTRY.size)
            entries[pid] = (fpga_id, index)
    except struct.error as exc:
        raise CorruptPoint("truncated registry") from exc
    return Registry(entries)


def encode_fpga(fpga):
    g = fpga.group
    parts = [
        struct.pack(">Q", fpga.fpga_id),
        _group_bytes(g),
        struct.pack(">II", fpga.n, len(fpga.partitions)),
    ]
    for pid in fpga.partitions:
        parts.append(pid + struct.pack(">I", fpga.index_map[pid]))
        parts.append(g.encode_g1(fpga.public_store.b[pid]))
    parts.append(g.encode_g1(fpga.public_store.a))
    # secure (tamper-proof) segment
    parts.append(struct.pack(">B", 1 if fpga.tamper_proof else 0))
    parts.append(g.encode_g1(fpga._secure))
    return _wrap(KIND_FPGA, b"".join(parts))


def decode_fpga(data):
    payload = _unwrap(data, KIND_FPGA)
    try:
        (fpga_id,) = struct.unpack_from(">Q", payload)
        group, offset = _read_group(payload, 8)
        n, count = struct.unpack_from(">II", payload, offset)
        offset += 8
        partitions, index_map, b = [], {}, {}
        for _ in range(count):
            pid = bytes(payload[offset : offset + PARTITION_ID_BYTES])
            (index,) = struct.unpack_from(">I", payload, offset + PARTITION_ID_BYTES)
            offset += PARTITION_ID_BYTES + 4
            b[pid], offset = group.read_g1(payload, offset)
            partitions.append(pid)
            index_map[pid] = index
        a, offset = group.read_g1(payload, offset)
        (tamper,) = struct.unpack_from(">B", payload, offset)
        secure, offset = group.read_g1(payload, offset + 1)
    except (struct.error, BadEncoding) as exc:
        raise CorruptPoint(f"corrupt FPGA image: {exc}") from exc
    if offset != len(payload):
        raise CorruptPoint("trailing bytes in FPGA image")
    fpga = VirtualFpga(fpga_id, group, n, partitions, index_map, secure, PublicStore(a, b))
    fpga.tamper_proof = bool(tamper)
    return fpga


def encode_bitstream(eb, group):
    c2 = eb.c2.to_bytes(group)
    return _wrap(
        KIND_BITSTREAM,
        _group_bytes(group) + eb.partition_id + struct.pack(">I", len(c2)) + c2 + eb.c1,
    )


def decode_bitstream(data):
    """Return (group, EncryptedBitstream)."""
    payload = _unwrap(data, KIND_BITSTREAM)
    try:
        group, offset = _read_group(payload, 0)
        pid = bytes(payload[offset : offset + PARTITION_ID_BYTES])
        (length,) = struct.unpack_from(">I", payload, offset + PARTITION_ID_BYTES)
    except struct.error as exc:
        raise MalformedCiphertext("truncated encrypted bitstream") from exc
    offset += PARTITION_ID_BYTES + 4
    c2 = kac.KacCiphertext.from_bytes(group, payload[offset : offset + length])
    return group, EncryptedBitstream(pid, bytes(payload[offset + length :]), c2)


def _write_atomic(path, data, mode=0o644):
    tmp = path.with_name(path.name + ".tmp")
    fd = os.open(tmp, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, mode)
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


class Store:
    """A directory holding ``mpk.bin``, ``msk.bin``, ``registry.bin`` and
    ``fpga-<id>.bin`` files."""

    def __init__(self, path):
        self.path = Path(path)

    @property
    def mpk_path(self):
        return self.path / "mpk.bin"

    @property
    def msk_path(self):
        return self.path / "msk.bin"

    @property
    def registry_path(self):
        return self.path / "registry.bin"

    def fpga_path(self, fpga_id):
        return self.path / f"fpga-{fpga_id:016x}.bin"

    def ensure_fresh(self):
        if self.mpk_path.exists() or self.msk_path.exists():
            raise StoreExists(f"a KAC store already exists at {self.path}")
        self.path.mkdir(parents=True, exist_ok=True)

    def _read(self, path):
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise StoreError(f"missing {path}") from None

    def save_mpk(self, mpk):
        _write_atomic(self.mpk_path, encode_mpk(mpk))

    def load_mpk(self):
        return decode_mpk(self._read(self.mpk_path))

    def save_msk(self, msk):
        _write_atomic(self.msk_path, encode_msk(msk), mode=0o600)

    def has_msk(self):
        return self.msk_path.exists()

    def load_msk(self):
        if not self.has_msk():
            raise MissingKey(f"no master secret key at {self.msk_path}")
        return decode_msk(self._read(self.msk_path))

    def save_registry(self, registry):
        _write_atomic(self.registry_path, encode_registry(registry))

    def load_registry(self):
        return decode_registry(self._read(self.registry_path))

    def save_fpga(self, fpga):
        _write_atomic(self.fpga_path(fpga.fpga_id), encode_fpga(fpga), mode=0o600)

    def load_fpga(self, fpga_id):
        return decode_fpga(self._read(self.fpga_path(fpga_id)))

    def load_vendor(self):
        """Vendor state; provisioning is disabled when msk.bin is absent."""
        from kacfpga.provision import Vendor

        msk = self.load_msk() if self.has_msk() else None
        return Vendor(self.load_mpk(), msk, self.load_registry(), self)
