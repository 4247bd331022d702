import random

import pytest

import oracles
from kacfpga.bigfield import (
    FP12_BYTES,
    Fp,
    Fp2,
    Fp12,
    fp12_inv,
    fp12_mul,
    fp12_pow,
    fp_add,
    fp_inv,
    fp_mul,
)
from kacfpga.errors import BadEncoding, ZeroInverse
from kacfpga.params import P, Q

R = random.Random(1234)


def rand_fp():
    return Fp(R.randrange(P))


def rand_fp2():
    return Fp2(R.randrange(P), R.randrange(P))


def rand_fp12():
    return Fp12([R.randrange(P) for _ in range(12)])


# --- F_p ---------------------------------------------------------------------


def test_fp_add_identity_and_wraparound():
    x = rand_fp()
    assert fp_add(Fp(0), x) == x
    assert fp_add(Fp(P - 1), Fp(1)) == Fp(0)


def test_fp_mul_identities():
    x = rand_fp()
    assert fp_mul(Fp(1), x) == x
    assert fp_mul(Fp(0), x) == Fp(0)


def test_fp_against_bigint_oracle():
    for _ in range(500):
        a, b = R.randrange(P), R.randrange(P)
        assert fp_add(Fp(a), Fp(b)).value == (a + b) % P
        assert fp_mul(Fp(a), Fp(b)).value == (a * b) % P


def test_fp_inv():
    assert fp_inv(Fp(1)) == Fp(1)
    assert fp_inv(Fp(P - 1)) == Fp(P - 1)
    for _ in range(200):
        a = Fp(R.randrange(1, P))
        assert fp_mul(a, fp_inv(a)) == Fp(1)
    with pytest.raises(ZeroInverse):
        fp_inv(Fp(0))


def test_fp_canonical_and_serialization():
    assert Fp(P + 5).value == 5
    x = rand_fp()
    data = x.to_bytes()
    assert len(data) == 32 and int.from_bytes(data, "big") == x.value
    assert Fp.from_bytes(data) == x
    with pytest.raises(BadEncoding):
        Fp.from_bytes(P.to_bytes(32, "big"))


@pytest.mark.parametrize("field", [rand_fp, rand_fp2])
def test_small_field_axioms(field):
    for _ in range(1000):
        a, b, c = field(), field(), field()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c


# --- F_p2 --------------------------------------------------------------------


def test_fp2_against_oracle():
    for _ in range(300):
        a, b = rand_fp2(), rand_fp2()
        assert (a * b).pair == oracles.f2_mul(a.pair, b.pair)
        if a:
            assert (a * a.inverse()) == Fp2.one()


def test_fp2_serialization():
    x = rand_fp2()
    data = x.to_bytes()
    assert len(data) == 64
    assert data[:32] == x.a0.to_bytes(32, "big")
    assert Fp2.from_bytes(data) == x


def test_fp2_zero_inverse():
    with pytest.raises(ZeroInverse):
        Fp2.zero().inverse()


# --- F_p12 -------------------------------------------------------------------


def test_fp12_identity_and_inverse_examples():
    x = rand_fp12()
    assert fp12_mul(Fp12.one(), x) == x
    assert fp12_mul(x, fp12_inv(x)) == Fp12.one()
    assert fp12_inv(Fp12.one()) == Fp12.one()


def test_fp12_mul_against_schoolbook_oracle():
    for _ in range(200):
        a, b = rand_fp12(), rand_fp12()
        assert fp12_mul(a, b).coeffs == oracles.fp12_mul_naive(a.coeffs, b.coeffs)


def test_fp12_square_matches_mul():
    for _ in range(50):
        a = rand_fp12()
        assert a.square() == fp12_mul(a, a)


def test_fp12_pow_examples():
    x = rand_fp12()
    assert fp12_pow(x, 0) == Fp12.one()
    assert fp12_pow(x, 1) == x
    assert fp12_pow(x, 2) == fp12_mul(x, x)
    e = R.getrandbits(64)
    assert fp12_pow(x, e).coeffs == oracles.fp12_pow_naive(x.coeffs, e)


def test_fp12_pow_negative_exponent_inverts():
    x = rand_fp12()
    assert fp12_pow(x, -3) == fp12_inv(fp12_pow(x, 3))


def test_fp12_inverse_roundtrip():
    for _ in range(100):
        a = rand_fp12()
        assert fp12_mul(a, fp12_inv(a)).is_one()
    with pytest.raises(ZeroInverse):
        fp12_inv(Fp12.zero())


def test_conjugate_inverts_unitary_elements():
    # f^(p^6 - 1) lies in the unitary subgroup, where conjugation is inversion
    for _ in range(10):
        f = rand_fp12()
        u = fp12_mul(f.conjugate(), fp12_inv(f))
        assert u.conjugate() == fp12_inv(u)


def test_fp12_field_axioms():
    for _ in range(1000):
        a, b, c = rand_fp12(), rand_fp12(), rand_fp12()
        ab = fp12_mul(a, b)
        assert fp12_mul(ab, c) == fp12_mul(a, fp12_mul(b, c))
        assert ab == fp12_mul(b, a)
        bc = Fp12([(x + y) % P for x, y in zip(b.coeffs, c.coeffs)])
        lhs = fp12_mul(a, bc)
        rhs = Fp12([(x + y) % P for x, y in zip(ab.coeffs, fp12_mul(a, c).coeffs)])
        assert lhs == rhs


@pytest.mark.parametrize("power", [1, 2, 3, 6])
def test_frobenius_is_pth_power(power):
    for _ in range(3):
        x = rand_fp12()
        assert x.frobenius(power) == fp12_pow(x, P**power)


def test_fp12_serialization_roundtrip():
    x = rand_fp12()
    data = x.to_bytes()
    assert len(data) == FP12_BYTES
    assert data[:32] == x.coeffs[0].to_bytes(32, "big")
    assert Fp12.from_bytes(data) == x
    with pytest.raises(BadEncoding):
        Fp12.from_bytes(data[:-1])


def test_fp12_multiplicative_order_divides_group_order():
    x = rand_fp12()
    assert fp12_pow(x, P**12 - 1) == Fp12.one()
    assert (P**12 - 1) % Q == 0
