"""Bilinear map and the bilinear-group realizations used by KAC.

``BnGroup`` is the real BN254 reduced Tate pairing. ``MockGroup`` is a
deliberately insecure group where every element is its discrete log mod
a small prime, so the KAC equations can be checked by hand.
"""

import threading
from dataclasses import dataclass
from typing import Protocol

from kacfpga import backend
from kacfpga.bigfield import FP12_BYTES, Fp12, fp12_inv, fp12_mul, fp12_pow
from kacfpga.curve import G1Point, G2Point, read_point, scalar_mul
from kacfpga.errors import BadEncoding, InfinityInput, MixedGroup, ZeroInput
from kacfpga.params import MILLER_DOUBLINGS, Q


@dataclass(frozen=True, slots=True)
class GtElement:
    value: Fp12

    def __mul__(self, other):
        return gt_op(self, other)

    def __pow__(self, k):
        return gt_pow(self, k)

    def inverse(self):
        return gt_inv(self)

    def is_identity(self):
        return self.value.is_one()

    def to_bytes(self):
        return self.value.to_bytes()

    @classmethod
    def identity(cls):
        return cls(Fp12.one())

    @classmethod
    def from_bytes(cls, data):
        elem = cls(Fp12.from_bytes(data))
        if not fp12_pow(elem.value, Q).is_one():
            raise BadEncoding("F_p12 element is not in the order-q subgroup")
        return elem


@dataclass(frozen=True, slots=True)
class MillerOutput:
    value: Fp12
    doublings: int


def miller_loop(P, Q2):
    """Unreduced pairing value f_{q,P}(Q) and the number of doubling steps."""
    if P.infinity or Q2.infinity:
        raise InfinityInput("Miller loop needs finite points")
    value, doublings = backend.active().miller_loop(P._raw(), Q2._raw())
    return MillerOutput(Fp12._raw(value), doublings)


def final_exponentiation(f):
    if not f:
        raise ZeroInput("final exponentiation of zero")
    return GtElement(Fp12._raw(backend.active().final_exponentiation(f.coeffs)))


def pair(P, Q2):
    if not isinstance(P, G1Point) or not isinstance(Q2, G2Point):
        raise MixedGroup("pair() takes a G1 point and a G2 point")
    if P.infinity or Q2.infinity:
        raise InfinityInput("pairing with the point at infinity")
    return GtElement(Fp12._raw(backend.active().pairing(P._raw(), Q2._raw())))


def gt_op(a, b):
    return GtElement(fp12_mul(a.value, b.value))


def gt_pow(a, k):
    return GtElement(fp12_pow(a.value, k % Q))


def gt_inv(a):
    # order-q elements are unitary: conjugation inverts them
    return GtElement(a.value.conjugate())


def gt_inv_generic(a):
    return GtElement(fp12_inv(a.value))


EXPECTED_MILLER_DOUBLINGS = MILLER_DOUBLINGS


class PairingCounter:
    """Thread-safe count of pairing evaluations."""

    def __init__(self):
        self._lock = threading.Lock()
        self._count = 0

    def bump(self):
        with self._lock:
            self._count += 1

    @property
    def count(self):
        return self._count

    def reset(self):
        with self._lock:
            self._count = 0


class BilinearGroup(Protocol):
    name: str
    order: int
    counter: PairingCounter

    def g1(self): ...
    def g2(self): ...
    def g1_identity(self): ...
    def g2_identity(self): ...
    def g1_add(self, a, b): ...
    def g2_add(self, a, b): ...
    def g1_mul(self, k, a): ...
    def g2_mul(self, k, a): ...
    def pair(self, a, b): ...
    def gt_op(self, a, b): ...
    def gt_inv(self, a): ...
    def gt_pow(self, a, k): ...
    def gt_bytes(self, a) -> bytes: ...
    def encode_g1(self, a) -> bytes: ...
    def encode_g2(self, a) -> bytes: ...
    def read_g1(self, buf, offset): ...
    def read_g2(self, buf, offset): ...


class BnGroup:
    """BN254 with the reduced Tate pairing (Type-3: G1 x G2 -> GT)."""

    name = "bn-real"
    code = 1
    order = Q
    g1_encoded_size = 65

    def __init__(self):
        self.counter = PairingCounter()

    def g1(self):
        return G1Point.generator()

    def g2(self):
        return G2Point.generator()

    def g1_identity(self):
        return G1Point.identity()

    def g2_identity(self):
        return G2Point.identity()

    def g1_add(self, a, b):
        return a + b

    g2_add = g1_add

    def g1_mul(self, k, a):
        return scalar_mul(k % Q, a)

    g2_mul = g1_mul

    def pair(self, a, b):
        self.counter.bump()
        return pair(a, b)

    def gt_identity(self):
        return GtElement.identity()

    def gt_op(self, a, b):
        return gt_op(a, b)

    def gt_inv(self, a):
        return gt_inv(a)

    def gt_pow(self, a, k):
        return gt_pow(a, k)

    def gt_bytes(self, a):
        return a.to_bytes()

    def encode_g1(self, a):
        return a.to_bytes()

    encode_g2 = encode_g1

    def read_g1(self, buf, offset=0):
        return read_point(G1Point, buf, offset)

    def read_g2(self, buf, offset=0):
        return read_point(G2Point, buf, offset)


@dataclass(frozen=True, slots=True)
class MockElement:
    """Group element represented by its exponent; ``kind`` is g1, g2 or gt."""

    exponent: int
    kind: str


class MockGroup:
    """Exponent-arithmetic stand-in: [a]P is a, e(a, b) = a*b mod q.

    Insecure by construction. Group operations are modular addition, so
    the GT "product" is addition and the GT "inverse" is negation.
    """

    name = "mock"
    code = 2

    def __init__(self, order=101):
        self.order = order
        self.counter = PairingCounter()
        self._width = max(1, (order.bit_length() + 7) // 8)
        self.g1_encoded_size = self._width

    def _elem(self, value, kind):
        return MockElement(value % self.order, kind)

    def _check(self, a, kind):
        if not isinstance(a, MockElement) or a.kind != kind:
            raise MixedGroup(f"expected a mock {kind} element, got {a!r}")

    def g1(self):
        return self._elem(1, "g1")

    def g2(self):
        return self._elem(1, "g2")

    def g1_identity(self):
        return self._elem(0, "g1")

    def g2_identity(self):
        return self._elem(0, "g2")

    def _add(self, a, b, kind):
        self._check(a, kind)
        self._check(b, kind)
        return self._elem(a.exponent + b.exponent, kind)

    def g1_add(self, a, b):
        return self._add(a, b, "g1")

    def g2_add(self, a, b):
        return self._add(a, b, "g2")

    def g1_mul(self, k, a):
        self._check(a, "g1")
        return self._elem(k * a.exponent, "g1")

    def g2_mul(self, k, a):
        self._check(a, "g2")
        return self._elem(k * a.exponent, "g2")

    def pair(self, a, b):
        self._check(a, "g1")
        self._check(b, "g2")
        self.counter.bump()
        return self._elem(a.exponent * b.exponent, "gt")

    def gt_identity(self):
        return self._elem(0, "gt")

    def gt_op(self, a, b):
        return self._add(a, b, "gt")

    def gt_inv(self, a):
        self._check(a, "gt")
        return self._elem(-a.exponent, "gt")

    def gt_pow(self, a, k):
        self._check(a, "gt")
        return self._elem(k * a.exponent, "gt")

    def _encode(self, a):
        return a.exponent.to_bytes(self._width, "big")

    def gt_bytes(self, a):
        self._check(a, "gt")
        return self._encode(a)

    def encode_g1(self, a):
        self._check(a, "g1")
        return self._encode(a)

    def encode_g2(self, a):
        self._check(a, "g2")
        return self._encode(a)

    def _read(self, buf, offset, kind):
        chunk = bytes(buf[offset : offset + self._width])
        if len(chunk) != self._width:
            raise BadEncoding("truncated mock element")
        value = int.from_bytes(chunk, "big")
        if value >= self.order:
            raise BadEncoding("mock element out of range")
        return MockElement(value, kind), offset + self._width

    def read_g1(self, buf, offset=0):
        return self._read(buf, offset, "g1")

    def read_g2(self, buf, offset=0):
        return self._read(buf, offset, "g2")


GT_ENCODED_BYTES = FP12_BYTES


def group_by_code(code, mock_order=101):
    if code == BnGroup.code:
        return BnGroup()
    if code == MockGroup.code:
        return MockGroup(mock_order)
    raise BadEncoding(f"unknown group code {code}")


def group_by_name(name):
    if name in ("bn", "bn-real", "bn254"):
        return BnGroup()
    if name == "mock":
        return MockGroup()
    raise ValueError(f"unknown group {name!r}")
