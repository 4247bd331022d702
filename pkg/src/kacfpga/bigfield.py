"""Prime field F_p and the tower extensions F_p2, F_p12 over the BN254 prime.

Values are immutable. Serialization is canonical big-endian: 32 bytes
per F_p element, extension elements low coefficient first.
"""

from kacfpga import backend
from kacfpga.errors import BadEncoding, ZeroInverse
from kacfpga.params import P

FP_BYTES = 32
FP2_BYTES = 2 * FP_BYTES
FP12_BYTES = 12 * FP_BYTES


def _int_from(data, offset=0):
    return int.from_bytes(data[offset : offset + FP_BYTES], "big")


def _canonical(value):
    if not 0 <= value < P:
        raise BadEncoding("field element not below the modulus")
    return value


class Fp:
    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", value % P)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def __repr__(self):
        return f"Fp({self.value:#x})"

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other % P
        return NotImplemented

    def __hash__(self):
        return hash(("Fp", self.value))

    def __bool__(self):
        return self.value != 0

    def __add__(self, other):
        return Fp(self.value + _v(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - _v(other))

    def __rsub__(self, other):
        return Fp(_v(other) - self.value)

    def __neg__(self):
        return Fp(-self.value)

    def __mul__(self, other):
        if isinstance(other, Fp2):
            return NotImplemented
        return Fp(self.value * _v(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * fp_inv(other if isinstance(other, Fp) else Fp(other))

    def __pow__(self, e):
        return Fp(pow(self.value, e, P)) if e >= 0 else fp_inv(self) ** -e

    def inverse(self):
        return fp_inv(self)

    def sqrt(self):
        # p = 3 mod 4
        r = pow(self.value, (P + 1) // 4, P)
        return Fp(r) if r * r % P == self.value else None

    def to_bytes(self):
        return self.value.to_bytes(FP_BYTES, "big")

    @classmethod
    def from_bytes(cls, data):
        if len(data) != FP_BYTES:
            raise BadEncoding(f"F_p encoding must be {FP_BYTES} bytes")
        return cls(_canonical(_int_from(data)))

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)


def _v(x):
    return x.value if isinstance(x, Fp) else x


def fp_add(a, b):
    return a + b


def fp_mul(a, b):
    return a * b


def fp_inv(a):
    if a.value == 0:
        raise ZeroInverse("inverse of zero in F_p")
    return Fp(pow(a.value, -1, P))


class Fp2:
    """a0 + a1*u with u^2 = -1."""

    __slots__ = ("a0", "a1")

    def __init__(self, a0, a1=0):
        object.__setattr__(self, "a0", _v(a0) % P)
        object.__setattr__(self, "a1", _v(a1) % P)

    def __setattr__(self, name, value):
        raise AttributeError("Fp2 is immutable")

    def __repr__(self):
        return f"Fp2({self.a0:#x}, {self.a1:#x})"

    def __eq__(self, other):
        if isinstance(other, Fp2):
            return self.a0 == other.a0 and self.a1 == other.a1
        if isinstance(other, (int, Fp)):
            return self.a1 == 0 and self.a0 == _v(other) % P
        return NotImplemented

    def __hash__(self):
        return hash(("Fp2", self.a0, self.a1))

    def __bool__(self):
        return bool(self.a0 or self.a1)

    @property
    def pair(self):
        return (self.a0, self.a1)

    @classmethod
    def of(cls, pair):
        return cls(pair[0], pair[1])

    def __add__(self, other):
        o = _lift2(other)
        return Fp2(self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift2(other)
        return Fp2(self.a0 - o.a0, self.a1 - o.a1)

    def __rsub__(self, other):
        return _lift2(other) - self

    def __neg__(self):
        return Fp2(-self.a0, -self.a1)

    def __mul__(self, other):
        if isinstance(other, (int, Fp)):
            s = _v(other)
            return Fp2(self.a0 * s, self.a1 * s)
        t0 = self.a0 * other.a0
        t1 = self.a1 * other.a1
        return Fp2(t0 - t1, (self.a0 + self.a1) * (other.a0 + other.a1) - t0 - t1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _lift2(other).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** -e
        result, base = Fp2(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self):
        return Fp2(self.a0, -self.a1)

    def inverse(self):
        norm = (self.a0 * self.a0 + self.a1 * self.a1) % P
        if norm == 0:
            raise ZeroInverse("inverse of zero in F_p2")
        t = pow(norm, -1, P)
        return Fp2(self.a0 * t, -self.a1 * t)

    def to_bytes(self):
        return self.a0.to_bytes(FP_BYTES, "big") + self.a1.to_bytes(FP_BYTES, "big")

    @classmethod
    def from_bytes(cls, data):
        if len(data) != FP2_BYTES:
            raise BadEncoding(f"F_p2 encoding must be {FP2_BYTES} bytes")
        return cls(_canonical(_int_from(data)), _canonical(_int_from(data, FP_BYTES)))

    @classmethod
    def zero(cls):
        return cls(0, 0)

    @classmethod
    def one(cls):
        return cls(1, 0)


def _lift2(x):
    return x if isinstance(x, Fp2) else Fp2(_v(x), 0)


class Fp12:
    """Element of F_p12 held as 12 canonical ints in tower slot order.

    Slot order is ``C0.c0, C0.c1, C0.c2, C1.c0, C1.c1, C1.c2`` (each an
    F_p2 pair) for the element ``C0 + C1*w``, ``Ci = ci0 + ci1*v + ci2*v^2``,
    ``w^2 = v``, ``v^3 = 9 + u``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(c % P for c in coeffs)
        if len(coeffs) != 12:
            raise ValueError("F_p12 needs 12 base-field coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Fp12 is immutable")

    @classmethod
    def _raw(cls, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __repr__(self):
        return f"Fp12({', '.join(hex(c) for c in self.coeffs)})"

    def __eq__(self, other):
        if not isinstance(other, Fp12):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Fp12", self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    @classmethod
    def one(cls):
        return cls._raw((1,) + (0,) * 11)

    @classmethod
    def zero(cls):
        return cls._raw((0,) * 12)

    @classmethod
    def from_fp2_slots(cls, slots):
        return cls([c for s in slots for c in (s.a0, s.a1)])

    def fp2_slots(self):
        c = self.coeffs
        return tuple(Fp2(c[2 * i], c[2 * i + 1]) for i in range(6))

    def is_one(self):
        return self.coeffs == Fp12.one().coeffs

    def __mul__(self, other):
        return fp12_mul(self, other)

    def __pow__(self, e):
        return fp12_pow(self, e)

    def inverse(self):
        return fp12_inv(self)

    def square(self):
        return Fp12._raw(backend.active().fp12_sqr(self.coeffs))

    def conjugate(self):
        """x^(p^6); the inverse for elements of the cyclotomic subgroup."""
        return Fp12._raw(backend.active().fp12_conj(self.coeffs))

    def frobenius(self, power=1):
        return Fp12._raw(backend.active().fp12_frobenius(self.coeffs, power))

    def to_bytes(self):
        return b"".join(c.to_bytes(FP_BYTES, "big") for c in self.coeffs)

    @classmethod
    def from_bytes(cls, data):
        if len(data) != FP12_BYTES:
            raise BadEncoding(f"F_p12 encoding must be {FP12_BYTES} bytes")
        return cls._raw(tuple(_canonical(_int_from(data, i * FP_BYTES)) for i in range(12)))


def fp12_mul(a, b):
    return Fp12._raw(backend.active().fp12_mul(a.coeffs, b.coeffs))


def fp12_pow(a, e):
    if e < 0:
        return fp12_pow(fp12_inv(a), -e)
    if e == 0:
        return Fp12.one()
    return Fp12._raw(backend.active().fp12_pow(a.coeffs, e))


def fp12_inv(a):
    if not a:
        raise ZeroInverse("inverse of zero in F_p12")
    return Fp12._raw(backend.active().fp12_inv(a.coeffs))
