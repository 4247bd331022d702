# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels (C core behind a thin Cython shim).

Interface mirrors ``kacfpga._pycore``.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from kacfpga.params import FROBENIUS_W, HARD_EXPONENT, MILLER_LOOP_CONSTANT, P

cdef extern from "_native/bn254.h":
    void bn_init(const uint64_t *p, uint64_t pinv, const uint64_t *r2,
                 const uint64_t *frob, const uint64_t *loop, int loop_limbs,
                 const uint64_t *hard, int hard_limbs)
    int bn_g1_mul(const uint64_t *pt, const uint64_t *k, int klimbs, uint64_t *out)
    int bn_g2_mul(const uint64_t *pt, const uint64_t *k, int klimbs, uint64_t *out)
    int bn_miller_loop(const uint64_t *g1, const uint64_t *g2, uint64_t *out)
    void bn_final_exp(const uint64_t *f, uint64_t *out)
    void bn_pairing(const uint64_t *g1, const uint64_t *g2, uint64_t *out)
    void bn_fp12_mul(const uint64_t *a, const uint64_t *b, uint64_t *out)
    void bn_fp12_sqr(const uint64_t *a, uint64_t *out)
    int bn_fp12_inv(const uint64_t *a, uint64_t *out)
    void bn_fp12_conj(const uint64_t *a, uint64_t *out)
    void bn_fp12_pow(const uint64_t *a, const uint64_t *e, int elimbs, uint64_t *out)
    void bn_fp12_frobenius(const uint64_t *a, int power, uint64_t *out)

NAME = "native"

cdef uint64_t _MASK = 0xFFFFFFFFFFFFFFFF


cdef inline void _put(uint64_t *dst, object value):
    # 4 limbs, little-endian
    dst[0] = value & _MASK
    dst[1] = (value >> 64) & _MASK
    dst[2] = (value >> 128) & _MASK
    dst[3] = value >> 192


cdef inline object _get(const uint64_t *src):
    return (<object>src[0]) | (<object>src[1] << 64) | (<object>src[2] << 128) | (<object>src[3] << 192)


cdef int _nlimbs(object value):
    return max(1, (value.bit_length() + 63) // 64)


cdef uint64_t *_limbs(object value, int n) except NULL:
    cdef uint64_t *buf = <uint64_t *>malloc(n * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        buf[i] = (value >> (64 * i)) & _MASK
    return buf


cdef void _put12(uint64_t *dst, object a):
    cdef int i
    for i in range(12):
        _put(dst + 4 * i, a[i])


cdef tuple _get12(const uint64_t *src):
    return tuple([_get(src + 4 * i) for i in range(12)])


cdef void _put_g2(uint64_t *dst, object pt):
    _put(dst, pt[0][0])
    _put(dst + 4, pt[0][1])
    _put(dst + 8, pt[1][0])
    _put(dst + 12, pt[1][1])


def _init():
    cdef uint64_t p[4]
    cdef uint64_t r2[4]
    cdef uint64_t frob[48]
    cdef int i
    _put(p, P)
    _put(r2, pow(2, 512, P))
    pinv = (-pow(P, -1, 1 << 64)) % (1 << 64)
    for i in range(6):
        _put(frob + 8 * i, FROBENIUS_W[i][0])
        _put(frob + 8 * i + 4, FROBENIUS_W[i][1])
    cdef int nl = _nlimbs(MILLER_LOOP_CONSTANT)
    cdef int nh = _nlimbs(HARD_EXPONENT)
    cdef uint64_t *loop = _limbs(MILLER_LOOP_CONSTANT, nl)
    cdef uint64_t *hard = _limbs(HARD_EXPONENT, nh)
    bn_init(p, pinv, r2, frob, loop, nl, hard, nh)
    free(loop)
    free(hard)


_init()


def g1_mul(k, point):
    if point is None or k <= 0:
        return None
    cdef uint64_t pt[8]
    cdef uint64_t out[8]
    _put(pt, point[0])
    _put(pt + 4, point[1])
    cdef int n = _nlimbs(k)
    cdef uint64_t *kl = _limbs(k, n)
    cdef int inf = bn_g1_mul(pt, kl, n, out)
    free(kl)
    if inf:
        return None
    return (_get(out), _get(out + 4))


def g2_mul(k, point):
    if point is None or k <= 0:
        return None
    cdef uint64_t pt[16]
    cdef uint64_t out[16]
    _put_g2(pt, point)
    cdef int n = _nlimbs(k)
    cdef uint64_t *kl = _limbs(k, n)
    cdef int inf = bn_g2_mul(pt, kl, n, out)
    free(kl)
    if inf:
        return None
    return ((_get(out), _get(out + 4)), (_get(out + 8), _get(out + 12)))


def miller_loop(P1, Q2):
    cdef uint64_t g1[8]
    cdef uint64_t g2[16]
    cdef uint64_t out[48]
    _put(g1, P1[0])
    _put(g1 + 4, P1[1])
    _put_g2(g2, Q2)
    cdef int n = bn_miller_loop(g1, g2, out)
    return _get12(out), n


def final_exponentiation(f):
    cdef uint64_t a[48]
    cdef uint64_t out[48]
    _put12(a, f)
    bn_final_exp(a, out)
    return _get12(out)


def pairing(P1, Q2):
    cdef uint64_t g1[8]
    cdef uint64_t g2[16]
    cdef uint64_t out[48]
    _put(g1, P1[0])
    _put(g1 + 4, P1[1])
    _put_g2(g2, Q2)
    bn_pairing(g1, g2, out)
    return _get12(out)


def fp12_mul(a, b):
    cdef uint64_t x[48]
    cdef uint64_t y[48]
    cdef uint64_t out[48]
    _put12(x, a)
    _put12(y, b)
    bn_fp12_mul(x, y, out)
    return _get12(out)


def fp12_sqr(a):
    cdef uint64_t x[48]
    cdef uint64_t out[48]
    _put12(x, a)
    bn_fp12_sqr(x, out)
    return _get12(out)


def fp12_inv(a):
    cdef uint64_t x[48]
    cdef uint64_t out[48]
    _put12(x, a)
    if bn_fp12_inv(x, out):
        raise ZeroDivisionError("F_p12 inverse of zero")
    return _get12(out)


def fp12_conj(a):
    cdef uint64_t x[48]
    cdef uint64_t out[48]
    _put12(x, a)
    bn_fp12_conj(x, out)
    return _get12(out)


def fp12_pow(a, e):
    cdef uint64_t x[48]
    cdef uint64_t out[48]
    _put12(x, a)
    cdef int n = _nlimbs(e)
    cdef uint64_t *el = _limbs(e, n)
    bn_fp12_pow(x, el, n, out)
    free(el)
    return _get12(out)


def fp12_frobenius(a, int power=1):
    cdef uint64_t x[48]
    cdef uint64_t out[48]
    _put12(x, a)
    bn_fp12_frobenius(x, power % 12, out)
    return _get12(out)
