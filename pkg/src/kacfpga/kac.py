"""Key-aggregate cryptosystem over a bilinear group.

Setup publishes [alpha^j]P for j in [0, n] and [n+2, 2n] plus [gamma]P,
in both source groups. The power at n+1 is never published; decryption
with an aggregate key for a subset S recovers e(P, P)^(r * alpha^(n+1))
only for ids inside S.

Group placement for asymmetric pairings: key material (a_S, sk_S, b_i,S)
lives in G1, ciphertext points (c0, c1) in G2.
"""

import hashlib
import random
import struct
from dataclasses import dataclass, field

from kacfpga.errors import (
    BadEncoding,
    BadId,
    BadLength,
    BadParameter,
    EmptySubset,
    HoleAccess,
    IdNotInSubset,
    IdOutOfRange,
    InfinityInput,
    MalformedCiphertext,
    MixedGroup,
)
from kacfpga.pairing import group_by_code

MAX_MESSAGE_BYTES = 32
FORMAT_VERSION = 1

_system_rng = random.SystemRandom()


def _rng(rng):
    return _system_rng if rng is None else rng


@dataclass(frozen=True)
class MasterPublicKey:
    group: object = field(repr=False, compare=False)
    n: int
    powers_g1: dict = field(repr=False)
    powers_g2: dict = field(repr=False)
    gamma_g1: object = field(repr=False)
    gamma_g2: object = field(repr=False)

    def power_indices(self):
        return [*range(0, self.n + 1), *range(self.n + 2, 2 * self.n + 1)]

    def _power(self, table, j):
        if j == self.n + 1:
            raise HoleAccess(f"power index {j} (n+1) is not published")
        try:
            return table[j]
        except KeyError:
            raise IdOutOfRange(f"power index {j} outside [0, {2 * self.n}]") from None

    def power_g1(self, j):
        return self._power(self.powers_g1, j)

    def power_g2(self, j):
        return self._power(self.powers_g2, j)

    def point_count(self):
        return len(self.powers_g1) + len(self.powers_g2) + 2

    def to_bytes(self):
        g = self.group
        parts = [
            _group_header(g),
            struct.pack(">I", self.n),
        ]
        parts += [g.encode_g1(self.powers_g1[j]) for j in self.power_indices()]
        parts.append(g.encode_g1(self.gamma_g1))
        parts += [g.encode_g2(self.powers_g2[j]) for j in self.power_indices()]
        parts.append(g.encode_g2(self.gamma_g2))
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data):
        group, offset = _read_group_header(data, 0)
        if len(data) < offset + 4:
            raise BadEncoding("truncated master public key")
        (n,) = struct.unpack_from(">I", data, offset)
        offset += 4
        if n < 1:
            raise BadEncoding("master public key with n = 0")
        indices = [*range(0, n + 1), *range(n + 2, 2 * n + 1)]
        powers_g1 = {}
        for j in indices:
            powers_g1[j], offset = group.read_g1(data, offset)
        gamma_g1, offset = group.read_g1(data, offset)
        powers_g2 = {}
        for j in indices:
            powers_g2[j], offset = group.read_g2(data, offset)
        gamma_g2, offset = group.read_g2(data, offset)
        if offset != len(data):
            raise BadEncoding("trailing bytes after master public key")
        return cls(group, n, powers_g1, powers_g2, gamma_g1, gamma_g2)


@dataclass(frozen=True)
class MasterKeyPair:
    mpk: MasterPublicKey
    msk: int = field(repr=False)

    @property
    def n(self):
        return self.mpk.n

    @property
    def group(self):
        return self.mpk.group


@dataclass(frozen=True)
class KacCiphertext:
    c0: object
    c1: object
    c2: bytes
    id: int

    def to_bytes(self, group):
        return b"".join(
            [
                struct.pack(">I", self.id),
                group.encode_g2(self.c0),
                group.encode_g2(self.c1),
                struct.pack(">H", len(self.c2)),
                self.c2,
            ]
        )

    @classmethod
    def from_bytes(cls, group, data):
        ct, offset = cls.read(group, data, 0)
        if offset != len(data):
            raise MalformedCiphertext("trailing bytes after ciphertext")
        return ct

    @classmethod
    def read(cls, group, data, offset=0):
        try:
            (ident,) = struct.unpack_from(">I", data, offset)
            c0, offset = group.read_g2(data, offset + 4)
            c1, offset = group.read_g2(data, offset)
            (length,) = struct.unpack_from(">H", data, offset)
        except (BadEncoding, struct.error) as exc:
            raise MalformedCiphertext(str(exc)) from exc
        offset += 2
        c2 = bytes(data[offset : offset + length])
        if len(c2) != length:
            raise MalformedCiphertext("truncated ciphertext payload")
        return cls(c0, c1, c2, ident), offset + length


@dataclass(frozen=True)
class AggregateKeyBundle:
    """sk_S is the secret part; a_S and the b map are public helpers."""

    group: object = field(repr=False, compare=False)
    subset: frozenset
    sk: object = field(repr=False)
    a: object
    b: dict

    def sk_bytes(self):
        return self.group.encode_g1(self.sk)


def _group_header(group):
    param = getattr(group, "order", 0) if group.code != 1 else 0
    return struct.pack(">HBI", FORMAT_VERSION, group.code, param)


def _read_group_header(data, offset):
    try:
        version, code, param = struct.unpack_from(">HBI", data, offset)
    except struct.error as exc:
        raise BadEncoding("truncated group header") from exc
    if version != FORMAT_VERSION:
        raise BadEncoding(f"unsupported format version {version}")
    return group_by_code(code, param or 101), offset + 7


def _draw(rng, q, excluded):
    while True:
        value = rng.randrange(q)
        if value not in excluded:
            return value


def setup(group, n, rng=None, *, alpha=None, gamma=None):
    """Generate (mpk, msk) for up to ``n`` identities.

    ``alpha``/``gamma`` override the random draw (test vectors only).
    """
    if not isinstance(n, int) or n < 1:
        raise BadParameter("n must be a positive integer")
    rng = _rng(rng)
    q = group.order
    if alpha is None:
        alpha = _draw(rng, q, {0, 1})
    if gamma is None:
        gamma = _draw(rng, q, {0})
    g1, g2 = group.g1(), group.g2()
    powers_g1, powers_g2 = {}, {}
    for j in [*range(0, n + 1), *range(n + 2, 2 * n + 1)]:
        e = pow(alpha, j, q)
        powers_g1[j] = group.g1_mul(e, g1)
        powers_g2[j] = group.g2_mul(e, g2)
    mpk = MasterPublicKey(
        group,
        n,
        powers_g1,
        powers_g2,
        group.g1_mul(gamma, g1),
        group.g2_mul(gamma, g2),
    )
    return MasterKeyPair(mpk, gamma % q)


def _mask(group, seed, length):
    return hashlib.sha256(group.gt_bytes(seed)).digest()[:length]


def _xor(data, mask):
    return bytes(x ^ y for x, y in zip(data, mask))


def encryption_seed(mpk, r):
    """e([alpha]P, [alpha^n]P)^r, the value hashed into the mask."""
    g = mpk.group
    return g.gt_pow(g.pair(mpk.power_g1(1), mpk.power_g2(mpk.n)), r)


def encrypt(mpk, i, message, rng=None, *, r=None):
    if not isinstance(i, int) or not 1 <= i <= mpk.n:
        raise BadId(f"entity id {i} outside [1, {mpk.n}]")
    message = bytes(message)
    if not 1 <= len(message) <= MAX_MESSAGE_BYTES:
        raise BadLength(f"message must be 1..{MAX_MESSAGE_BYTES} bytes")
    g = mpk.group
    if r is None:
        r = 1 + _rng(rng).randrange(g.order - 1)
    c0 = g.g2_mul(r, g.g2())
    c1 = g.g2_mul(r, g.g2_add(mpk.gamma_g2, mpk.power_g2(i)))
    c2 = _xor(message, _mask(g, encryption_seed(mpk, r), len(message)))
    return KacCiphertext(c0, c1, c2, i)


def _check_subset(mpk, subset):
    subset = frozenset(subset)
    if not subset:
        raise EmptySubset("subset must not be empty")
    for j in subset:
        if not isinstance(j, int) or not 1 <= j <= mpk.n:
            raise IdOutOfRange(f"id {j} outside [1, {mpk.n}]")
    return subset


def _b_term(mpk, subset, i):
    g = mpk.group
    total = g.g1_identity()
    for j in sorted(subset):
        if j != i:
            total = g.g1_add(total, mpk.power_g1(mpk.n + 1 - j + i))
    return total


def aggregate_key(msk, mpk, subset):
    subset = _check_subset(mpk, subset)
    g = mpk.group
    a = g.g1_identity()
    for j in sorted(subset):
        a = g.g1_add(a, mpk.power_g1(mpk.n + 1 - j))
    sk = g.g1_mul(msk, a)
    b = {i: _b_term(mpk, subset, i) for i in sorted(subset)}
    return AggregateKeyBundle(g, subset, sk, a, b)


def _seed(group, sk, a, b, ct):
    try:
        lhs = group.pair(a, ct.c1)
        rhs = group.pair(group.g1_add(sk, b), ct.c0)
    except (InfinityInput, MixedGroup) as exc:
        raise MalformedCiphertext(str(exc)) from exc
    return group.gt_op(lhs, group.gt_inv(rhs))


def decryption_seed(bundle, ct):
    """e(a_S, c1) * e(sk_S + b_id,S, c0)^-1."""
    if ct.id not in bundle.subset:
        raise IdNotInSubset(f"id {ct.id} not covered by this aggregate key")
    return _seed(bundle.group, bundle.sk, bundle.a, bundle.b[ct.id], ct)


def decrypt(bundle, ct):
    if not 1 <= len(ct.c2) <= MAX_MESSAGE_BYTES:
        raise MalformedCiphertext("ciphertext payload length out of range")
    seed = decryption_seed(bundle, ct)
    return _xor(ct.c2, _mask(bundle.group, seed, len(ct.c2)))


def decrypt_outside_subset(mpk, bundle, ct):
    """Test hook: run the decryption equation for an id the key does not cover.

    b_id,S is rebuilt from public powers; the result is garbage unless id
    is in S.
    """
    if not 1 <= ct.id <= mpk.n:
        raise BadId(f"entity id {ct.id} outside [1, {mpk.n}]")
    b = _b_term(mpk, bundle.subset, ct.id)
    seed = _seed(bundle.group, bundle.sk, bundle.a, b, ct)
    return _xor(ct.c2, _mask(bundle.group, seed, len(ct.c2)))


__all__ = [
    "AggregateKeyBundle",
    "KacCiphertext",
    "MasterKeyPair",
    "MasterPublicKey",
    "aggregate_key",
    "decrypt",
    "decrypt_outside_subset",
    "decryption_seed",
    "encrypt",
    "encryption_seed",
    "setup",
]
