import random

import pytest

import oracles
from kacfpga.bigfield import Fp, Fp2
from kacfpga.curve import (
    G1_ENCODED_BYTES,
    G2_ENCODED_BYTES,
    G1Point,
    G2Point,
    decode_scalar,
    encode_scalar,
    point_add,
    point_double,
    point_sum,
    scalar_mul,
    validate,
)
from kacfpga.errors import BadEncoding, MixedGroup, NotOnCurve, WrongSubgroup
from kacfpga.params import P, Q

R = random.Random(99)
CLASSES = [G1Point, G2Point]


def raw(pt):
    """Affine tuple form understood by the oracle."""
    if pt.infinity:
        return None
    if isinstance(pt, G1Point):
        return (pt.x.value, pt.y.value)
    return (pt.x.pair, pt.y.pair)


def ops(cls):
    return oracles.FP if cls is G1Point else oracles.FP2


def rand_point(cls):
    return scalar_mul(R.randrange(1, Q), cls.generator())


@pytest.mark.parametrize("cls", CLASSES)
def test_add_examples(cls):
    pt = rand_point(cls)
    assert point_add(cls.identity(), pt) == pt
    assert point_add(pt, -pt).infinity
    g = cls.generator()
    assert point_add(g, g) == point_double(g)


@pytest.mark.parametrize("cls", CLASSES)
def test_double_examples(cls):
    assert point_double(cls.identity()).infinity
    g = cls.generator()
    assert point_add(point_double(g), g) == scalar_mul(3, g)


@pytest.mark.parametrize("cls", CLASSES)
def test_double_and_add_against_affine_oracle(cls):
    for _ in range(20):
        a, b = rand_point(cls), rand_point(cls)
        assert raw(point_double(a)) == oracles.affine_add(raw(a), raw(a), ops(cls))
        assert raw(point_add(a, b)) == oracles.affine_add(raw(a), raw(b), ops(cls))


@pytest.mark.parametrize("cls", CLASSES)
def test_scalar_mul_against_affine_oracle(cls, each_backend):
    g = cls.generator()
    for _ in range(5):
        k = R.randrange(Q)
        assert raw(scalar_mul(k, g)) == oracles.affine_mul(k, raw(g), ops(cls))


@pytest.mark.parametrize("cls", CLASSES)
def test_scalar_mul_examples(cls, each_backend):
    g = cls.generator()
    assert scalar_mul(0, g).infinity
    assert scalar_mul(1, g) == g
    assert scalar_mul(Q, g).infinity
    assert scalar_mul(-5, g) == -scalar_mul(5, g)
    assert scalar_mul(7, cls.identity()).infinity


@pytest.mark.parametrize("cls", CLASSES)
def test_group_axioms(cls):
    for _ in range(10):
        a, b, c = rand_point(cls), rand_point(cls), rand_point(cls)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + cls.identity() == a
        assert (a + (-a)).infinity
        assert (a + b).is_on_curve()


@pytest.mark.parametrize("cls", CLASSES)
def test_scalar_mul_distributes(cls):
    g = rand_point(cls)
    for _ in range(5):
        a, b = R.randrange(Q), R.randrange(Q)
        assert scalar_mul(a + b, g) == scalar_mul(a, g) + scalar_mul(b, g)
        assert scalar_mul(a * b, g) == scalar_mul(a, scalar_mul(b, g))


def test_point_sum():
    g = G1Point.generator()
    assert point_sum([g, g, g], G1Point) == scalar_mul(3, g)
    assert point_sum([], G2Point).infinity


def test_mixed_group_rejected():
    with pytest.raises(MixedGroup):
        point_add(G1Point.generator(), G2Point.generator())


@pytest.mark.parametrize("cls,name,size", [(G1Point, "g1", G1_ENCODED_BYTES), (G2Point, "g2", G2_ENCODED_BYTES)])
def test_encoding_roundtrip(cls, name, size):
    assert validate(b"\x00", name).infinity
    assert validate(cls.generator().to_bytes(), name) == cls.generator()
    for _ in range(10):
        pt = rand_point(cls)
        data = pt.to_bytes()
        assert len(data) == size and data[0] == 0x04
        assert validate(data, name).to_bytes() == data


@pytest.mark.parametrize("cls,name", [(G1Point, "g1"), (G2Point, "g2")])
def test_flipped_y_bit_is_not_on_curve(cls, name):
    data = bytearray(cls.generator().to_bytes())
    data[-1] ^= 0x01
    with pytest.raises(NotOnCurve):
        validate(bytes(data), name)


@pytest.mark.parametrize("cls,name", [(G1Point, "g1"), (G2Point, "g2")])
def test_bad_encodings(cls, name):
    good = cls.generator().to_bytes()
    with pytest.raises(BadEncoding):
        validate(b"\x02" + good[1:], name)
    with pytest.raises(BadEncoding):
        validate(good[:-1], name)
    with pytest.raises(BadEncoding):
        validate(b"", name)
    # x coordinate >= p is non-canonical
    with pytest.raises(BadEncoding):
        validate(b"\x04" + b"\xff" * (len(good) - 1), name)


def _twist_point_outside_subgroup():
    rng = random.Random(5)
    while True:
        x = (rng.randrange(P), rng.randrange(P))
        rhs = oracles.f2_add(oracles.f2_mul(oracles.f2_mul(x, x), x), oracles.TWIST_B)
        y = oracles.f2_sqrt(rhs)
        if y is not None and oracles.f2_mul(y, y) == rhs:
            return G2Point(Fp2.of(x), Fp2.of(y))


def test_twist_point_outside_subgroup_rejected():
    pt = _twist_point_outside_subgroup()
    assert pt.is_on_curve()
    assert not pt.in_subgroup()
    with pytest.raises(WrongSubgroup):
        validate(pt.to_bytes(), "g2")


def test_g1_generator_on_curve():
    g = G1Point.generator()
    assert g.y.value ** 2 % P == (g.x.value**3 + 3) % P
    assert G1Point(Fp(1), Fp(2)).is_on_curve()


def test_scalar_encoding():
    k = R.randrange(Q)
    assert decode_scalar(encode_scalar(k)) == k
    with pytest.raises(BadEncoding):
        encode_scalar(Q)
    with pytest.raises(BadEncoding):
        decode_scalar(Q.to_bytes(32, "big"))
