"""BN254 point groups G1 (over F_p) and G2 (over F_p2, on the sextic twist).

Points are affine and immutable. Encodings are uncompressed:
``0x04 || x || y`` (65 bytes in G1, 129 in G2); infinity is ``0x00``.
"""

from dataclasses import dataclass

from kacfpga import backend
from kacfpga.bigfield import FP2_BYTES, FP_BYTES, Fp, Fp2
from kacfpga.errors import BadEncoding, MixedGroup, NotOnCurve, WrongSubgroup
from kacfpga.params import CURVE_B, G1_GENERATOR, G2_GENERATOR, Q, TWIST_B

G1_ENCODED_BYTES = 1 + 2 * FP_BYTES
G2_ENCODED_BYTES = 1 + 2 * FP2_BYTES
_INFINITY_TAG = 0x00
_POINT_TAG = 0x04

_B1 = Fp(CURVE_B)
_B2 = Fp2.of(TWIST_B)


class _Point:
    __slots__ = ()

    def __add__(self, other):
        return point_add(self, other)

    def __neg__(self):
        if self.infinity:
            return self
        return type(self)(self.x, -self.y)

    def __sub__(self, other):
        return point_add(self, -other)

    def __rmul__(self, k):
        return scalar_mul(k, self)

    def double(self):
        return point_double(self)

    def is_on_curve(self):
        if self.infinity:
            return True
        return self.y * self.y == self.x * self.x * self.x + self._b

    @classmethod
    def identity(cls):
        return cls(None, None, True)


@dataclass(frozen=True, slots=True)
class G1Point(_Point):
    x: Fp | None
    y: Fp | None
    infinity: bool = False

    _b = _B1
    _coord_bytes = FP_BYTES
    _coord = Fp

    @classmethod
    def generator(cls):
        return cls(Fp(G1_GENERATOR[0]), Fp(G1_GENERATOR[1]))

    def _raw(self):
        return None if self.infinity else (self.x.value, self.y.value)

    @classmethod
    def _from_raw(cls, raw):
        if raw is None:
            return cls.identity()
        return cls(Fp(raw[0]), Fp(raw[1]))

    def in_subgroup(self):
        # cofactor 1: every curve point has order q
        return self.is_on_curve()

    def to_bytes(self):
        if self.infinity:
            return bytes([_INFINITY_TAG])
        return bytes([_POINT_TAG]) + self.x.to_bytes() + self.y.to_bytes()


@dataclass(frozen=True, slots=True)
class G2Point(_Point):
    x: Fp2 | None
    y: Fp2 | None
    infinity: bool = False

    _b = _B2
    _coord_bytes = FP2_BYTES
    _coord = Fp2

    @classmethod
    def generator(cls):
        return cls(Fp2.of(G2_GENERATOR[0]), Fp2.of(G2_GENERATOR[1]))

    def _raw(self):
        return None if self.infinity else (self.x.pair, self.y.pair)

    @classmethod
    def _from_raw(cls, raw):
        if raw is None:
            return cls.identity()
        return cls(Fp2.of(raw[0]), Fp2.of(raw[1]))

    def in_subgroup(self):
        if self.infinity:
            return True
        return backend.active().g2_mul(Q, self._raw()) is None

    def to_bytes(self):
        if self.infinity:
            return bytes([_INFINITY_TAG])
        return bytes([_POINT_TAG]) + self.x.to_bytes() + self.y.to_bytes()


def _check_same(p1, p2):
    if type(p1) is not type(p2):
        raise MixedGroup(f"cannot combine {type(p1).__name__} with {type(p2).__name__}")


def point_double(pt):
    if pt.infinity or not pt.y:
        return pt.identity()
    x, y = pt.x, pt.y
    slope = (x * x * 3) / (y * 2)
    x3 = slope * slope - x * 2
    return type(pt)(x3, slope * (x - x3) - y)


def point_add(p1, p2):
    _check_same(p1, p2)
    if p1.infinity:
        return p2
    if p2.infinity:
        return p1
    if p1.x == p2.x:
        if p1.y == p2.y:
            return point_double(p1)
        return p1.identity()
    slope = (p2.y - p1.y) / (p2.x - p1.x)
    x3 = slope * slope - p1.x - p2.x
    return type(p1)(x3, slope * (p1.x - x3) - p1.y)


def scalar_mul(k, pt):
    """[k]pt via the active backend's double-and-add."""
    if k < 0:
        return scalar_mul(-k, -pt)
    if k == 0 or pt.infinity:
        return pt.identity()
    core = backend.active()
    mul = core.g1_mul if isinstance(pt, G1Point) else core.g2_mul
    return type(pt)._from_raw(mul(k, pt._raw()))


def point_sum(points, cls):
    total = cls.identity()
    for pt in points:
        total = point_add(total, pt)
    return total


def _decode(cls, data):
    if len(data) == 1 and data[0] == _INFINITY_TAG:
        return cls.identity()
    size = 1 + 2 * cls._coord_bytes
    if len(data) != size or data[0] != _POINT_TAG:
        raise BadEncoding(f"{cls.__name__} encoding must be 0x00 or 0x04 plus {size - 1} bytes")
    half = cls._coord_bytes
    pt = cls(cls._coord.from_bytes(data[1 : 1 + half]), cls._coord.from_bytes(data[1 + half :]))
    if not pt.is_on_curve():
        raise NotOnCurve(f"{cls.__name__} point is not on the curve")
    if not pt.in_subgroup():
        raise WrongSubgroup(f"{cls.__name__} point is outside the order-q subgroup")
    return pt


def validate(data, group="g1"):
    """Decode an encoded point and prove curve and subgroup membership."""
    cls = {"g1": G1Point, "g2": G2Point}[group]
    return _decode(cls, bytes(data))


def read_point(cls, buf, offset=0):
    """Decode one point from ``buf`` at ``offset``; return (point, next_offset)."""
    if offset >= len(buf):
        raise BadEncoding("truncated point")
    size = 1 if buf[offset] == _INFINITY_TAG else 1 + 2 * cls._coord_bytes
    chunk = bytes(buf[offset : offset + size])
    if len(chunk) != size:
        raise BadEncoding("truncated point")
    return _decode(cls, chunk), offset + size


def encode_scalar(k):
    if not 0 <= k < Q:
        raise BadEncoding("scalar out of range")
    return k.to_bytes(32, "big")


def decode_scalar(data):
    if len(data) != 32:
        raise BadEncoding("scalar encoding must be 32 bytes")
    k = int.from_bytes(data, "big")
    if k >= Q:
        raise BadEncoding("scalar not below the group order")
    return k
