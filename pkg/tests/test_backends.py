import random

import pytest

from kacfpga import backend
from kacfpga.curve import G1Point, G2Point, scalar_mul
from kacfpga.params import P, Q

native_only = pytest.mark.skipif(
    "native" not in backend.available(), reason="compiled core not built"
)
R = random.Random(2024)


def both(fn, *args):
    return [fn(backend.BACKENDS[name], *args) for name in ("python", "native")]


@native_only
def test_scalar_mul_agrees():
    g1, g2 = G1Point.generator()._raw(), G2Point.generator()._raw()
    for _ in range(5):
        k = R.randrange(Q)
        a, b = both(lambda core: core.g1_mul(k, g1))
        assert a == b
        a, b = both(lambda core: core.g2_mul(k, g2))
        assert a == b
    a, b = both(lambda core: core.g2_mul(Q, g2))
    assert a is None and b is None


@native_only
def test_field_kernels_agree():
    x = tuple(R.randrange(P) for _ in range(12))
    y = tuple(R.randrange(P) for _ in range(12))
    for op in ("fp12_sqr", "fp12_inv", "fp12_conj"):
        a, b = both(lambda core: getattr(core, op)(x))
        assert a == b, op
    a, b = both(lambda core: core.fp12_mul(x, y))
    assert a == b
    e = R.getrandbits(300)
    a, b = both(lambda core: core.fp12_pow(x, e))
    assert a == b
    for power in range(1, 4):
        a, b = both(lambda core: core.fp12_frobenius(x, power))
        assert a == b


@native_only
def test_pairing_pipeline_agrees():
    p1 = scalar_mul(R.randrange(1, Q), G1Point.generator())._raw()
    q2 = scalar_mul(R.randrange(1, Q), G2Point.generator())._raw()
    a, b = both(lambda core: core.miller_loop(p1, q2))
    assert a == b
    a, b = both(lambda core: core.final_exponentiation(a[0]))
    assert a == b
    a, b = both(lambda core: core.pairing(p1, q2))
    assert a == b


def test_select_and_restore():
    before = backend.name()
    with backend.using("python") as core:
        assert core.NAME == "python" and backend.name() == "python"
    assert backend.name() == before
    with pytest.raises(ValueError):
        backend.select("fortran")
