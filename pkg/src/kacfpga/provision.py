"""Multi-tenant FPGA provisioning: vendor setup, device provisioning,
tenant-side hybrid encryption and the simulated on-chip loader.

Roles:
  vendor  holds msk, provisions devices (``Vendor``)
  tenant  holds only mpk + the public registry (``TenantSession``)
  device  holds sk_S in its secure store (``VirtualFpga``)
"""

import hashlib
import random
import threading
from dataclasses import dataclass, field

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from kacfpga import kac
from kacfpga.errors import (
    BadParameter,
    ForeignPartition,
    MalformedCiphertext,
    MissingKey,
    TagMismatch,
    TooManyPartitions,
    UnknownPartition,
)

SESSION_KEY_BYTES = 16
NONCE_BYTES = 12
TAG_BYTES = 16
PARTITION_ID_BYTES = 16

_system_rng = random.SystemRandom()


def _rng(rng):
    return _system_rng if rng is None else rng


@dataclass
class Registry:
    """Public map partition id -> (fpga id, KAC index)."""

    entries: dict = field(default_factory=dict)

    def lookup(self, partition_id):
        try:
            return self.entries[partition_id]
        except KeyError:
            raise UnknownPartition(f"unknown partition {partition_id.hex()}") from None

    def index_of(self, partition_id):
        return self.lookup(partition_id)[1]

    def used_indices(self):
        return {index for _, index in self.entries.values()}

    def fpga_ids(self):
        return {fpga for fpga, _ in self.entries.values()}

    def partitions_of(self, fpga_id):
        return [pid for pid, (fpga, _) in self.entries.items() if fpga == fpga_id]


@dataclass(frozen=True)
class EncryptedBitstream:
    partition_id: bytes
    c1: bytes  # nonce || ciphertext || tag
    c2: kac.KacCiphertext

    @property
    def nonce(self):
        return self.c1[:NONCE_BYTES]

    @property
    def body(self):
        return self.c1[NONCE_BYTES:-TAG_BYTES]


@dataclass(frozen=True)
class PublicStore:
    a: object
    b: dict  # partition id -> group element


class VirtualFpga:
    """Simulated device. sk_S is only reachable from the on-chip KAC engine."""

    def __init__(self, fpga_id, group, n, partitions, index_map, secure_key, public_store):
        self.fpga_id = fpga_id
        self.group = group
        self.n = n
        self.partitions = list(partitions)
        self.index_map = dict(index_map)
        self.public_store = public_store
        self.tamper_proof = True
        self._secure = secure_key
        self._cache = {}
        self._session_invocations = {}
        self._kac_invocations = 0
        self._counter_lock = threading.Lock()
        self._locks = {pid: threading.Lock() for pid in self.partitions}

    def __repr__(self):
        return f"VirtualFpga(id={self.fpga_id:016x}, partitions={len(self.partitions)})"

    @property
    def kac_invocations(self):
        return self._kac_invocations

    def session_invocations(self, eb):
        return self._session_invocations.get(self._session_key(eb), 0)

    def secure_store_bytes(self):
        return len(self.group.encode_g1(self._secure))

    def _bundle(self):
        by_index = {self.index_map[pid]: b for pid, b in self.public_store.b.items()}
        return kac.AggregateKeyBundle(
            self.group, frozenset(by_index), self._secure, self.public_store.a, by_index
        )

    def _session_key(self, eb):
        # one tenant session = one KAC encapsulation of its key
        return eb.partition_id, hashlib.sha256(eb.c2.to_bytes(self.group)).digest()

    def _kac_engine(self, ct):
        key = kac.decrypt(self._bundle(), ct)
        with self._counter_lock:
            self._kac_invocations += 1
        return key

    def load_bitstream(self, eb):
        pid = eb.partition_id
        if pid not in self._locks:
            raise ForeignPartition(f"partition {pid.hex()} is not on FPGA {self.fpga_id:016x}")
        if eb.c2.id != self.index_map[pid]:
            raise MalformedCiphertext("session key was encrypted for a different partition")
        skey = self._session_key(eb)
        with self._locks[pid]:
            key = self._cache.get(skey)
            if key is not None:
                return _open(key, eb)
            key = self._kac_engine(eb.c2)
            with self._counter_lock:
                self._session_invocations[skey] = self._session_invocations.get(skey, 0) + 1
            plaintext = _open(key, eb)
            self._cache[skey] = key
            return plaintext

    def close_session(self, partition_id):
        with self._locks[partition_id]:
            for skey in [k for k in self._cache if k[0] == partition_id]:
                del self._cache[skey]

    def force_load(self, eb, mpk):
        """Test hook: decrypt a foreign partition's bitstream with this device's key."""
        key = kac.decrypt_outside_subset(mpk, self._bundle(), eb.c2)
        return _open(key, eb)


def _seal(key, partition_id, bitstream, rng):
    nonce = rng.randbytes(NONCE_BYTES)
    return nonce + AESGCM(key).encrypt(nonce, bytes(bitstream), partition_id)


def _open(key, eb):
    if len(eb.c1) < NONCE_BYTES + TAG_BYTES:
        raise MalformedCiphertext("C1 shorter than nonce plus tag")
    try:
        return AESGCM(key).decrypt(eb.c1[:NONCE_BYTES], eb.c1[NONCE_BYTES:], eb.partition_id)
    except InvalidTag:
        raise TagMismatch("bitstream integrity tag does not verify") from None


@dataclass(frozen=True)
class TenantSession:
    """Tenant-chosen session key K and its KAC encapsulation for one partition."""

    tenant_id: str
    partition_id: bytes
    key: bytes = field(repr=False)
    c2: kac.KacCiphertext = field(repr=False)

    def encrypt(self, bitstream, rng=None):
        c1 = _seal(self.key, self.partition_id, bitstream, _rng(rng))
        return EncryptedBitstream(self.partition_id, c1, self.c2)


def open_session(mpk, registry, partition_id, rng=None, tenant_id="tenant"):
    rng = _rng(rng)
    index = registry.index_of(partition_id)
    key = rng.randbytes(SESSION_KEY_BYTES)
    c2 = kac.encrypt(mpk, index, key, rng)
    return TenantSession(tenant_id, partition_id, key, c2)


def tenant_encrypt(mpk, registry, partition_id, bitstream, rng=None):
    """One-shot hybrid encryption under a fresh session key."""
    rng = _rng(rng)
    return open_session(mpk, registry, partition_id, rng).encrypt(bitstream, rng)


def load_bitstream(fpga, eb):
    return fpga.load_bitstream(eb)


class Vendor:
    def __init__(self, mpk, msk=None, registry=None, store=None):
        self.mpk = mpk
        self._msk = msk
        self.registry = registry if registry is not None else Registry()
        self.store = store

    @property
    def group(self):
        return self.mpk.group

    @property
    def can_provision(self):
        return self._msk is not None

    def provision_fpga(self, partition_count, rng=None):
        if self._msk is None:
            raise MissingKey("master secret key unavailable; vendor operations disabled")
        if partition_count < 1:
            raise BadParameter("partition count must be at least 1")
        n = self.mpk.n
        if partition_count > n:
            raise TooManyPartitions(f"{partition_count} partitions exceed n = {n}")
        rng = _rng(rng)
        free = sorted(set(range(1, n + 1)) - self.registry.used_indices())
        if partition_count > len(free):
            raise TooManyPartitions(
                f"only {len(free)} unassigned identities left out of n = {n}"
            )
        indices = rng.sample(free, partition_count)

        taken_fpgas = self.registry.fpga_ids()
        fpga_id = rng.getrandbits(64)
        while fpga_id in taken_fpgas:
            fpga_id = rng.getrandbits(64)
        partitions = []
        for _ in indices:
            pid = rng.randbytes(PARTITION_ID_BYTES)
            while pid in self.registry.entries or pid in partitions:
                pid = rng.randbytes(PARTITION_ID_BYTES)
            partitions.append(pid)

        index_map = dict(zip(partitions, indices))
        bundle = kac.aggregate_key(self._msk, self.mpk, indices)
        public = PublicStore(bundle.a, {pid: bundle.b[index_map[pid]] for pid in partitions})
        fpga = VirtualFpga(fpga_id, self.group, n, partitions, index_map, bundle.sk, public)
        for pid in partitions:
            self.registry.entries[pid] = (fpga_id, index_map[pid])
        if self.store is not None:
            self.store.save_fpga(fpga)
            self.store.save_registry(self.registry)
        return fpga


def vendor_init(n, rng=None, store=None, group=None):
    """Run KAC setup; persist mpk/msk/registry when a store is given."""
    from kacfpga.pairing import BnGroup

    group = group if group is not None else BnGroup()
    if store is not None:
        store.ensure_fresh()
    keypair = kac.setup(group, n, _rng(rng))
    vendor = Vendor(keypair.mpk, keypair.msk, Registry(), store)
    if store is not None:
        store.save_mpk(keypair.mpk)
        store.save_msk(keypair.msk)
        store.save_registry(vendor.registry)
    return vendor


def provision_fpga(vendor, partition_count, rng=None):
    return vendor.provision_fpga(partition_count, rng)
